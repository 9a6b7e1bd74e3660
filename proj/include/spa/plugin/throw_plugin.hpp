// Intraprocedural exception-object flow: objects reaching the variable of a
// `throw` flow into the catch variable of the nearest matching handler;
// objects matching no local handler are reported as method-escaping.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "spa/plugin/plugin.hpp"

namespace spa::plugin {

class ThrowPropagationPlugin final : public Plugin {
 public:
  struct Escape {
    const ir::Stmt* throwSite;
    const ir::MethodDecl* method;
    const pta::Obj* obj;
  };

  void onStart(SolverAPI& solver) override { solver_ = &solver; }
  void onNewMethod(const pta::CSMethod* m) override;
  void onNewPointsToSet(pta::CSVar* v, const pta::PointsToSet& delta) override;

  const std::vector<Escape>& escaped() const { return escaped_; }
  std::string report() const;

 private:
  struct ThrowSite {
    const ir::Stmt* stmt;
    const ir::Var* var;
  };

  SolverAPI* solver_ = nullptr;
  std::map<const ir::MethodBody*, std::vector<ThrowSite>> throwSites_;
  std::set<std::tuple<const ir::Stmt*, const pta::Obj*>> escapedSet_;
  std::vector<Escape> escaped_;
};

}  // namespace spa::plugin
