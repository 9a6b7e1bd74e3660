// Naive round-robin iterate-to-fixpoint dataflow solver; the independent
// check for the worklist solver.
#pragma once

#include "spa/dataflow/solver.hpp"

namespace spa::testsupport {

template <spa::dataflow::DataflowContract A>
spa::dataflow::DataflowResult<typename A::Fact> roundRobinSolve(
    const A& analysis, const spa::cfg::CFG& cfg) {
  using spa::cfg::CFG;
  using Fact = typename A::Fact;
  const bool forward = analysis.isForward();
  const int n = cfg.nodeCount();

  spa::dataflow::DataflowResult<Fact> result(n);
  for (int node = 0; node < n; ++node) {
    result.inFact(node) = analysis.newInitialFact();
    result.outFact(node) = analysis.newInitialFact();
  }
  const int boundary = forward ? CFG::kEntry : CFG::kExit;
  if (forward) {
    result.outFact(boundary) = analysis.newBoundaryFact(cfg);
  } else {
    result.inFact(boundary) = analysis.newBoundaryFact(cfg);
  }

  bool changedInSweep = true;
  while (changedInSweep) {
    changedInSweep = false;
    for (int node = 0; node < n; ++node) {
      if (node == boundary) continue;
      Fact& input = forward ? result.inFact(node) : result.outFact(node);
      const auto& edges = forward ? cfg.inEdges(node) : cfg.outEdges(node);
      for (const spa::cfg::Edge& e : edges) {
        int from = forward ? e.source : e.target;
        const Fact& flow =
            forward ? result.outFact(from) : result.inFact(from);
        bool met = analysis.needsEdgeTransfer()
                       ? analysis.meetInto(analysis.transferEdge(e, flow), input)
                       : analysis.meetInto(flow, input);
        changedInSweep |= met;
      }
      Fact& output = forward ? result.outFact(node) : result.inFact(node);
      if (const spa::ir::Stmt* s = cfg.stmtOf(node)) {
        changedInSweep |= analysis.transferNode(*s, input, output);
      } else {
        changedInSweep |= analysis.meetInto(input, output);
      }
    }
  }
  return result;
}

}  // namespace spa::testsupport
