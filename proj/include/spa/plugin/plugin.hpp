// The analysis plugin system: the solver notifies every registered plugin of
// each points-to delta, call edge, reachable method and statement; plugins
// mutate analysis state only back through the solver's own APIs.
#pragma once

#include <vector>

#include "spa/ir/hierarchy.hpp"
#include "spa/pta/call_graph.hpp"
#include "spa/pta/object.hpp"
#include "spa/pta/pointer.hpp"

namespace spa::plugin {

// The solver surface plugins program against. addPointsTo/addCallEdge/
// addStmts enqueue work rather than mutating immediately, so plugins may
// call them freely from inside callbacks.
class SolverAPI {
 public:
  virtual ~SolverAPI() = default;

  virtual void addPointsTo(pta::CSVar* var, const pta::CSObj* obj) = 0;
  virtual void addPointsTo(pta::CSVar* var, const pta::PointsToSet& objs) = 0;
  virtual void addCallEdge(const pta::CallEdge& edge) = 0;
  // Appends synthesized statements to a reachable method and processes them
  // as if parsed. Throws std::invalid_argument for unreachable methods.
  virtual void addStmts(const pta::CSMethod* method,
                        std::vector<ir::Stmt> stmts) = 0;

  virtual const pta::PointsToSet& getPointsToSet(pta::Pointer* p) = 0;
  virtual std::vector<const pta::CSCallSite*> getCallersOf(
      const ir::MethodDecl* m) = 0;

  virtual pta::HeapManager& heap() = 0;
  virtual pta::CSManager& cs() = 0;
  virtual pta::ContextManager& contexts() = 0;
  virtual const ir::Hierarchy& hierarchy() const = 0;
};

// Every callback has a no-op default; a plugin implements only what it
// needs. Callbacks run on the solver's single thread.
class Plugin {
 public:
  virtual ~Plugin() = default;

  virtual void onStart(SolverAPI&) {}
  virtual void onNewPointsToSet(pta::CSVar*, const pta::PointsToSet&) {}
  virtual void onNewCallEdge(const pta::CallEdge&) {}
  virtual void onNewMethod(const pta::CSMethod*) {}
  virtual void onNewStmt(const ir::Stmt&, const pta::CSMethod*) {}
  virtual void onFinish() {}
};

// Dispatches every event to each plugin in registration order.
class CompositePlugin final : public Plugin {
 public:
  void addPlugin(Plugin* p) { plugins_.push_back(p); }
  const std::vector<Plugin*>& plugins() const { return plugins_; }

  void onStart(SolverAPI& s) override {
    for (Plugin* p : plugins_) p->onStart(s);
  }
  void onNewPointsToSet(pta::CSVar* v, const pta::PointsToSet& delta) override {
    for (Plugin* p : plugins_) p->onNewPointsToSet(v, delta);
  }
  void onNewCallEdge(const pta::CallEdge& e) override {
    for (Plugin* p : plugins_) p->onNewCallEdge(e);
  }
  void onNewMethod(const pta::CSMethod* m) override {
    for (Plugin* p : plugins_) p->onNewMethod(m);
  }
  void onNewStmt(const ir::Stmt& s, const pta::CSMethod* m) override {
    for (Plugin* p : plugins_) p->onNewStmt(s, m);
  }
  void onFinish() override {
    for (Plugin* p : plugins_) p->onFinish();
  }

 private:
  std::vector<Plugin*> plugins_;
};

}  // namespace spa::plugin
