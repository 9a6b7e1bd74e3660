// One worklist solver drives every dataflow analysis. An analysis supplies
// fact construction, meet, and transfer functions; the transfer functions —
// not the solver — decide whether a fact changed, so the solver never keeps
// shadow copies of old facts.
#pragma once

#include <concepts>
#include <deque>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "spa/cfg/cfg.hpp"

namespace spa::dataflow {

class DivergenceError : public std::runtime_error {
 public:
  explicit DivergenceError(const std::string& analysis)
      : std::runtime_error("dataflow analysis '" + analysis +
                           "' exceeded its iteration ceiling; transfer "
                           "functions are likely non-monotone") {}
};

template <typename A>
concept DataflowContract = requires(const A& a, const cfg::CFG& g,
                                    const ir::Stmt& s, const cfg::Edge& e,
                                    typename A::Fact& f,
                                    const typename A::Fact& cf) {
  { a.isForward() } -> std::convertible_to<bool>;
  { a.name() } -> std::convertible_to<std::string>;
  { a.newBoundaryFact(g) } -> std::same_as<typename A::Fact>;
  { a.newInitialFact() } -> std::same_as<typename A::Fact>;
  { a.meetInto(cf, f) } -> std::same_as<bool>;
  { a.transferNode(s, cf, f) } -> std::same_as<bool>;
  { a.needsEdgeTransfer() } -> std::convertible_to<bool>;
  { a.transferEdge(e, cf) } -> std::same_as<typename A::Fact>;
};

template <typename Fact>
class DataflowResult {
 public:
  explicit DataflowResult(int nodes) : in_(nodes), out_(nodes) {}

  const Fact& inFact(int node) const { return in_[node]; }
  const Fact& outFact(int node) const { return out_[node]; }
  const Fact& inFactOf(const ir::Stmt& s) const {
    return in_[cfg::CFG::nodeOf(s.index)];
  }
  const Fact& outFactOf(const ir::Stmt& s) const {
    return out_[cfg::CFG::nodeOf(s.index)];
  }
  Fact& inFact(int node) { return in_[node]; }
  Fact& outFact(int node) { return out_[node]; }

 private:
  std::vector<Fact> in_;
  std::vector<Fact> out_;
};

// Worklist solve to the least fixpoint. FIFO order with a membership set;
// the ceiling (default 10000 x node count) guards against non-monotone
// contracts.
template <DataflowContract A>
DataflowResult<typename A::Fact> solve(const A& analysis, const cfg::CFG& cfg,
                                       size_t iterationCeiling = 0) {
  using Fact = typename A::Fact;
  const bool forward = analysis.isForward();
  const int n = cfg.nodeCount();
  if (iterationCeiling == 0) iterationCeiling = 10000u * n;

  DataflowResult<Fact> result(n);
  for (int node = 0; node < n; ++node) {
    result.inFact(node) = analysis.newInitialFact();
    result.outFact(node) = analysis.newInitialFact();
  }
  const int boundary = forward ? cfg::CFG::kEntry : cfg::CFG::kExit;
  // The boundary fact sits on the side facts flow out of.
  if (forward) {
    result.outFact(boundary) = analysis.newBoundaryFact(cfg);
  } else {
    result.inFact(boundary) = analysis.newBoundaryFact(cfg);
  }

  std::deque<int> worklist;
  std::set<int> queued;
  auto push = [&](int node) {
    if (queued.insert(node).second) worklist.push_back(node);
  };
  for (int node = 0; node < n; ++node) {
    if (node != boundary) push(node);
  }

  size_t iterations = 0;
  while (!worklist.empty()) {
    if (++iterations > iterationCeiling)
      throw DivergenceError(analysis.name());
    int node = worklist.front();
    worklist.pop_front();
    queued.erase(node);

    // Meet facts flowing in over each incoming (forward) / outgoing
    // (backward) edge into this node's input-side fact.
    Fact& input = forward ? result.inFact(node) : result.outFact(node);
    const auto& edges = forward ? cfg.inEdges(node) : cfg.outEdges(node);
    for (const cfg::Edge& e : edges) {
      int from = forward ? e.source : e.target;
      const Fact& flow = forward ? result.outFact(from) : result.inFact(from);
      if (analysis.needsEdgeTransfer()) {
        analysis.meetInto(analysis.transferEdge(e, flow), input);
      } else {
        analysis.meetInto(flow, input);
      }
    }

    Fact& output = forward ? result.outFact(node) : result.inFact(node);
    bool changed;
    if (const ir::Stmt* s = cfg.stmtOf(node)) {
      changed = analysis.transferNode(*s, input, output);
    } else {
      // Entry/exit carry facts through unchanged.
      changed = analysis.meetInto(input, output);
    }
    if (changed) {
      const auto& succEdges = forward ? cfg.outEdges(node) : cfg.inEdges(node);
      for (const cfg::Edge& e : succEdges) push(forward ? e.target : e.source);
    }
  }
  return result;
}

// One full meet+transfer pass over all nodes reports no change exactly when
// the result is a fixpoint.
template <DataflowContract A>
bool isFixpoint(const A& analysis, const cfg::CFG& cfg,
                const DataflowResult<typename A::Fact>& result) {
  using Fact = typename A::Fact;
  const bool forward = analysis.isForward();
  const int boundary = forward ? cfg::CFG::kEntry : cfg::CFG::kExit;
  for (int node = 0; node < cfg.nodeCount(); ++node) {
    if (node == boundary) continue;
    Fact input = forward ? result.inFact(node) : result.outFact(node);
    const auto& edges = forward ? cfg.inEdges(node) : cfg.outEdges(node);
    for (const cfg::Edge& e : edges) {
      int from = forward ? e.source : e.target;
      const Fact& flow = forward ? result.outFact(from) : result.inFact(from);
      bool metChanged =
          analysis.needsEdgeTransfer()
              ? analysis.meetInto(analysis.transferEdge(e, flow), input)
              : analysis.meetInto(flow, input);
      if (metChanged) return false;
    }
    Fact output = forward ? result.outFact(node) : result.inFact(node);
    bool changed;
    if (const ir::Stmt* s = cfg.stmtOf(node)) {
      changed = analysis.transferNode(*s, input, output);
    } else {
      changed = analysis.meetInto(input, output);
    }
    if (changed) return false;
  }
  return true;
}

}  // namespace spa::dataflow
