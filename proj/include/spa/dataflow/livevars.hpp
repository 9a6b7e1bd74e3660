// Backward live-variables analysis; facts are sets of variables.
#pragma once

#include <set>
#include <string>

#include "spa/dataflow/solver.hpp"

namespace spa::dataflow {

struct LiveFact {
  struct VarLess {
    bool operator()(const ir::Var* a, const ir::Var* b) const {
      return a->index < b->index;
    }
  };
  std::set<const ir::Var*, VarLess> vars;

  bool operator==(const LiveFact& o) const { return vars == o.vars; }
  bool contains(const ir::Var* v) const { return vars.count(v) > 0; }
  std::string toString() const;
};

class LiveVariables {
 public:
  using Fact = LiveFact;

  bool isForward() const { return false; }
  std::string name() const { return "livevar"; }
  bool needsEdgeTransfer() const { return false; }

  LiveFact newBoundaryFact(const cfg::CFG&) const { return LiveFact(); }
  LiveFact newInitialFact() const { return LiveFact(); }

  bool meetInto(const LiveFact& source, LiveFact& target) const {
    size_t before = target.vars.size();
    target.vars.insert(source.vars.begin(), source.vars.end());
    return target.vars.size() != before;
  }

  // in = (out - defs) + uses; facts only grow, so no removal is needed.
  bool transferNode(const ir::Stmt& s, const LiveFact& out,
                    LiveFact& in) const {
    bool changed = false;
    const ir::Var* def = ir::defVar(s);
    for (const ir::Var* v : out.vars) {
      if (v != def) changed |= in.vars.insert(v).second;
    }
    for (const ir::Var* v : ir::useVars(s)) changed |= in.vars.insert(v).second;
    return changed;
  }

  LiveFact transferEdge(const cfg::Edge&, const LiveFact& fact) const {
    return fact;
  }
};

std::string dumpResult(const cfg::CFG& cfg,
                       const DataflowResult<LiveFact>& result);

}  // namespace spa::dataflow
