// The pointer-analysis result: context-sensitive state kept alive through a
// shared universe, plus the context-erased projections the metric counts and
// most clients consume.
#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>

#include "spa/pta/call_graph.hpp"
#include "spa/pta/pfg.hpp"

namespace spa::pta {

// Everything a run interns and owns. Results share it so post-run queries
// (and replay harnesses) resolve the same interned entities.
struct Universe {
  explicit Universe(const ir::Program& p, std::set<std::string> mergeTypes)
      : program(&p), heap(std::move(mergeTypes)) {}

  const ir::Program* program;
  HeapManager heap;
  ContextManager contexts;
  CSManager cs;
  PointerFlowGraph pfg;
  CallGraph callGraph;
};

struct SolverStats {
  uint64_t varDeltaEvents = 0;
  uint64_t callEdgeEvents = 0;
  uint64_t newMethodEvents = 0;
  uint64_t newStmtEvents = 0;
  uint64_t worklistPops = 0;
};

class PTAResult {
 public:
  PTAResult(std::shared_ptr<Universe> universe, SolverStats stats,
            std::vector<std::string> diagnostics);

  const Universe& universe() const { return *universe_; }
  std::shared_ptr<Universe> universePtr() const { return universe_; }
  const CallGraph& callGraph() const { return universe_->callGraph; }
  const PointerFlowGraph& pfg() const { return universe_->pfg; }
  const SolverStats& stats() const { return stats_; }
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

  // Context-insensitive projection: union over contexts with heap contexts
  // erased. Vars with empty sets are absent.
  const std::map<const ir::Var*, std::set<const Obj*>>& ptCi() const {
    return ptCi_;
  }
  std::set<const Obj*> ptCiOf(const ir::Var* v) const {
    auto it = ptCi_.find(v);
    return it == ptCi_.end() ? std::set<const Obj*>{} : it->second;
  }

  // Metric counts over the erased views: total points-to relations over all
  // variables, reachable methods, and call graph edges.
  size_t varPtCount() const;
  size_t reachCount() const { return callGraph().reachableMethodsCI().size(); }
  size_t edgeCount() const { return callGraph().edgesCI().size(); }

  // Lookup helpers for graph queries.
  CSVar* varPointer(const ir::Var* v, const Context* ctx = nullptr) const;
  Pointer* instanceFieldPointer(const std::string& objName,
                                const std::string& fieldName) const;
  bool hasPfgPath(const Pointer* from, const Pointer* to) const {
    return from && to && universe_->pfg.hasPath(from, to);
  }

  // Deterministic text dump: pt_ci, call edges, counts.
  std::string dump() const;

 private:
  std::shared_ptr<Universe> universe_;
  SolverStats stats_;
  std::vector<std::string> diagnostics_;
  std::map<const ir::Var*, std::set<const Obj*>> ptCi_;
};

}  // namespace spa::pta
