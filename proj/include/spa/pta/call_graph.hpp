// On-the-fly call graph: context-qualified call sites to context-qualified
// methods, plus the reachable-method set. Both only grow.
#pragma once

#include <map>
#include <set>
#include <vector>

#include "spa/pta/pointer.hpp"

namespace spa::pta {

struct CallEdge {
  const CSCallSite* callSite;
  const CSMethod* callee;
  ir::InvokeKind kind;
};

class CallGraph {
 public:
  // False when the edge was already present.
  bool addEdge(const CallEdge& e) {
    if (!edgeSet_.insert({e.callSite, e.callee}).second) return false;
    edges_.push_back(e);
    callersOf_[e.callee->method].push_back(e.callSite);
    return true;
  }

  bool addReachable(const CSMethod* m) {
    if (!reachableSet_.insert(m).second) return false;
    reachable_.push_back(m);
    return true;
  }

  bool isReachable(const CSMethod* m) const { return reachableSet_.count(m); }

  const std::vector<CallEdge>& edges() const { return edges_; }
  const std::vector<const CSMethod*>& reachableMethods() const {
    return reachable_;
  }

  // Distinct context-qualified call sites calling into any context of m.
  std::vector<const CSCallSite*> callersOf(const ir::MethodDecl* m) const {
    auto it = callersOf_.find(m);
    if (it == callersOf_.end()) return {};
    std::vector<const CSCallSite*> out;
    std::set<const CSCallSite*> seen;
    for (const CSCallSite* cs : it->second) {
      if (seen.insert(cs).second) out.push_back(cs);
    }
    return out;
  }

  // Context-erased views.
  std::set<const ir::MethodDecl*> reachableMethodsCI() const {
    std::set<const ir::MethodDecl*> out;
    for (const CSMethod* m : reachable_) out.insert(m->method);
    return out;
  }
  std::set<std::pair<const ir::Stmt*, const ir::MethodDecl*>> edgesCI() const {
    std::set<std::pair<const ir::Stmt*, const ir::MethodDecl*>> out;
    for (const CallEdge& e : edges_)
      out.insert({e.callSite->site, e.callee->method});
    return out;
  }

 private:
  std::vector<CallEdge> edges_;
  std::set<std::pair<const CSCallSite*, const CSMethod*>> edgeSet_;
  std::vector<const CSMethod*> reachable_;
  std::set<const CSMethod*> reachableSet_;
  std::map<const ir::MethodDecl*, std::vector<const CSCallSite*>> callersOf_;
};

}  // namespace spa::pta
