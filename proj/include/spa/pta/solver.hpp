// Inclusion-based whole-program pointer analysis over the pointer flow
// graph, with on-the-fly call graph construction, parameterized context
// sensitivity, and plugin notification.
#pragma once

#include <deque>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "spa/ir/hierarchy.hpp"
#include "spa/plugin/plugin.hpp"
#include "spa/pta/result.hpp"

namespace spa::pta {

class PTAError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SolverOptions {
  // Cast edges filter by the cast type and copy edges by the target's
  // declared type when enabled.
  bool typeFilter = true;
  std::vector<std::string> mergeTypes;
  uint64_t worklistCeiling = 50'000'000;
};

class Solver final : public plugin::SolverAPI {
 public:
  Solver(const ir::Program& program, SolverOptions options = {});

  PTAResult solve(std::span<const ir::MethodDecl* const> entries,
                  ContextSelector& selector,
                  const std::vector<plugin::Plugin*>& plugins = {});

  // Solver APIs (also callable by plugins during the run).
  void addPointsTo(CSVar* var, const CSObj* obj) override;
  void addPointsTo(CSVar* var, const PointsToSet& objs) override;
  void addCallEdge(const CallEdge& edge) override;
  void addStmts(const CSMethod* method, std::vector<ir::Stmt> stmts) override;
  const PointsToSet& getPointsToSet(Pointer* p) override { return p->pts(); }
  std::vector<const CSCallSite*> getCallersOf(
      const ir::MethodDecl* m) override {
    return universe_->callGraph.callersOf(m);
  }
  HeapManager& heap() override { return universe_->heap; }
  CSManager& cs() override { return universe_->cs; }
  ContextManager& contexts() override { return universe_->contexts; }
  const ir::Hierarchy& hierarchy() const override {
    return universe_->program->hierarchy();
  }

 private:
  void enqueue(Pointer* target, const CSObj* obj);
  void enqueueAll(Pointer* target, const PointsToSet& objs,
                  const std::optional<ir::Type>& filter);
  // Adds a PFG edge and, when new, flows the source's current set across.
  void addPfgEdge(Pointer* source, Pointer* target,
                  std::optional<ir::Type> filter = std::nullopt);
  void drain();
  void propagate(Pointer* p, const PointsToSet& delta);
  void addReachable(const CSMethod* csm);
  void processStmt(const CSMethod* csm, const ir::Stmt& s);
  void processCallOnReceiver(const CSMethod* caller, const ir::Stmt& s,
                             const CSObj* receiver);
  void linkCallEdge(const CallEdge& edge);
  std::optional<ir::Type> copyFilter(const ir::Var* target) const;

  std::shared_ptr<Universe> universe_;
  SolverOptions options_;
  ContextSelector* selector_ = nullptr;
  plugin::CompositePlugin plugins_;
  SolverStats stats_;
  std::vector<std::string> diagnostics_;
  bool running_ = false;

  std::deque<Pointer*> worklist_;
  std::map<Pointer*, PointsToSet> pending_;
  // Synthesized statements (addStmts) need stable storage and indices past
  // the parsed body.
  std::deque<ir::Stmt> synthStmts_;
  std::map<const ir::MethodDecl*, int> synthCount_;
};

// Convenience wrapper matching the module-level entry point.
PTAResult solvePointerAnalysis(const ir::Program& program,
                               std::span<const ir::MethodDecl* const> entries,
                               ContextSelector& selector,
                               const std::vector<plugin::Plugin*>& plugins = {},
                               SolverOptions options = {});

}  // namespace spa::pta
