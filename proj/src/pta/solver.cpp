#include "spa/pta/solver.hpp"

#include <cassert>
#include <set>

namespace spa::pta {

Solver::Solver(const ir::Program& program, SolverOptions options)
    : options_(std::move(options)) {
  std::set<std::string> merge(options_.mergeTypes.begin(),
                              options_.mergeTypes.end());
  universe_ = std::make_shared<Universe>(program, std::move(merge));
}

PTAResult Solver::solve(std::span<const ir::MethodDecl* const> entries,
                        ContextSelector& selector,
                        const std::vector<plugin::Plugin*>& plugins) {
  if (running_) throw PTAError("solve() is not reentrant");
  running_ = true;
  selector_ = &selector;
  selector.bind(universe_->contexts);
  for (plugin::Plugin* p : plugins) plugins_.addPlugin(p);

  plugins_.onStart(*this);
  for (const ir::MethodDecl* entry : entries) {
    addReachable(universe_->cs.csMethod(universe_->contexts.empty(), entry));
    drain();
  }
  drain();
  plugins_.onFinish();
  running_ = false;
  return PTAResult(universe_, stats_, diagnostics_);
}

std::optional<ir::Type> Solver::copyFilter(const ir::Var* target) const {
  if (!options_.typeFilter) return std::nullopt;
  if (!target->type.isReference()) return std::nullopt;
  return target->type;
}

void Solver::enqueue(Pointer* target, const CSObj* obj) {
  if (target->pts().contains(obj)) return;
  auto [it, inserted] =
      pending_.try_emplace(target, PointsToSet(&universe_->cs));
  if (inserted) worklist_.push_back(target);
  it->second.add(obj);
}

void Solver::enqueueAll(Pointer* target, const PointsToSet& objs,
                        const std::optional<ir::Type>& filter) {
  const ir::Hierarchy& h = hierarchy();
  objs.forEach([&](const CSObj* o) {
    if (filter && !h.isSubtype(o->obj()->type(), *filter)) return;
    enqueue(target, o);
  });
}

void Solver::addPointsTo(CSVar* var, const CSObj* obj) { enqueue(var, obj); }

void Solver::addPointsTo(CSVar* var, const PointsToSet& objs) {
  enqueueAll(var, objs, std::nullopt);
}

void Solver::addPfgEdge(Pointer* source, Pointer* target,
                        std::optional<ir::Type> filter) {
  if (universe_->pfg.addEdge(source, target, filter)) {
    if (!source->pts().empty()) enqueueAll(target, source->pts(), filter);
  }
}

void Solver::drain() {
  while (!worklist_.empty()) {
    if (++stats_.worklistPops > options_.worklistCeiling)
      throw PTAError("pointer-analysis worklist ceiling exceeded");
    Pointer* p = worklist_.front();
    worklist_.pop_front();
    auto node = pending_.extract(p);
    assert(!node.empty());
    // Keep only objects still new at application time.
    PointsToSet delta(&universe_->cs);
    node.mapped().forEach([&](const CSObj* o) {
      if (!p->pts().contains(o)) delta.add(o);
    });
    if (delta.empty()) continue;
    p->pts().addAll(delta);
    propagate(p, delta);
  }
}

void Solver::propagate(Pointer* p, const PointsToSet& delta) {
  for (const PFGEdge& e : universe_->pfg.succsOf(p)) {
    enqueueAll(e.target, delta, e.filter);
  }
  if (p->kind() != Pointer::Kind::Var) return;
  auto* csv = static_cast<CSVar*>(p);
  const ir::Var* v = csv->var();
  const Context* c = csv->context();
  const ir::MethodBody* body = v->method->body();
  if (body) {
    const auto& rel = body->relevantStmts(v);
    delta.forEach([&](const CSObj* o) {
      for (const ir::Stmt* s : rel.fieldLoads) {
        const auto* load = s->as<ir::LoadField>();
        addPfgEdge(universe_->cs.instanceField(o, load->field.resolved),
                   universe_->cs.csVar(c, load->lhs));
      }
      for (const ir::Stmt* s : rel.fieldStores) {
        const auto* store = s->as<ir::StoreField>();
        addPfgEdge(universe_->cs.csVar(c, store->rhs),
                   universe_->cs.instanceField(o, store->field.resolved));
      }
      for (const ir::Stmt* s : rel.arrayLoads) {
        const auto* load = s->as<ir::LoadArray>();
        addPfgEdge(universe_->cs.arrayIndex(o),
                   universe_->cs.csVar(c, load->lhs));
      }
      for (const ir::Stmt* s : rel.arrayStores) {
        const auto* store = s->as<ir::StoreArray>();
        addPfgEdge(universe_->cs.csVar(c, store->rhs),
                   universe_->cs.arrayIndex(o));
      }
      for (const ir::Stmt* s : rel.invokes) {
        processCallOnReceiver(universe_->cs.csMethod(c, v->method), *s, o);
      }
    });
  }
  ++stats_.varDeltaEvents;
  plugins_.onNewPointsToSet(csv, delta);
}

void Solver::addReachable(const CSMethod* csm) {
  if (!universe_->callGraph.addReachable(csm)) return;
  ++stats_.newMethodEvents;
  plugins_.onNewMethod(csm);
  const ir::MethodBody* body = csm->method->body();
  if (!body) return;
  for (const ir::Stmt& s : body->stmts()) processStmt(csm, s);
}

void Solver::processStmt(const CSMethod* csm, const ir::Stmt& s) {
  ++stats_.newStmtEvents;
  plugins_.onNewStmt(s, csm);
  const Context* c = csm->context;
  CSManager& cs = universe_->cs;

  if (const auto* n = s.as<ir::New>()) {
    const Obj* obj = universe_->heap.objForAlloc(s, *csm->method);
    // Only allocation-site objects take heap contexts; constants, merged
    // summaries, and mocks stay context-free.
    const Context* hctx = obj->isNew() ? selector_->selectHeapContext(csm, s)
                                       : universe_->contexts.empty();
    enqueue(cs.csVar(c, n->lhs),
            cs.csObj(hctx, obj, universe_->contexts.empty()));
  } else if (const auto* lit = s.as<ir::AssignLiteral>()) {
    if (lit->value.isString()) {
      const Obj* obj = universe_->heap.constantObj(
          ir::Type::classType(ir::builtin::kString), lit->value);
      enqueue(cs.csVar(c, lit->lhs),
              cs.csObj(universe_->contexts.empty(), obj,
                       universe_->contexts.empty()));
    }
  } else if (const auto* copy = s.as<ir::Copy>()) {
    addPfgEdge(cs.csVar(c, copy->rhs), cs.csVar(c, copy->lhs),
               copyFilter(copy->lhs));
  } else if (const auto* cast = s.as<ir::Cast>()) {
    addPfgEdge(cs.csVar(c, cast->rhs), cs.csVar(c, cast->lhs),
               options_.typeFilter ? std::make_optional(cast->target)
                                   : std::nullopt);
  } else if (const auto* load = s.as<ir::LoadField>()) {
    if (!load->base) {
      addPfgEdge(cs.staticField(load->field.resolved),
                 cs.csVar(c, load->lhs));
    }
  } else if (const auto* store = s.as<ir::StoreField>()) {
    if (!store->base) {
      addPfgEdge(cs.csVar(c, store->rhs),
                 cs.staticField(store->field.resolved));
    }
  } else if (const auto* inv = s.as<ir::Invoke>()) {
    if (inv->kind == ir::InvokeKind::Static) {
      const ir::MethodDecl* callee = inv->method.resolved;
      const Context* ct =
          selector_->selectMethodContext(csm, s, *callee, nullptr);
      addCallEdge(CallEdge{cs.csCallSite(c, &s, csm->method),
                           cs.csMethod(ct, callee), inv->kind});
    }
    // Virtual/special calls are driven by the receiver's points-to set.
  }
}

void Solver::processCallOnReceiver(const CSMethod* caller, const ir::Stmt& s,
                                   const CSObj* receiver) {
  const auto* inv = s.as<ir::Invoke>();
  const ir::Hierarchy& h = hierarchy();
  const ir::MethodDecl* callee = nullptr;
  if (inv->kind == ir::InvokeKind::Special) {
    callee = inv->method.resolved;
  } else {
    const ir::Type& t = receiver->obj()->type();
    const ir::ClassDecl* cls = t.isClass() ? h.classByName(t.className()) : nullptr;
    callee = cls ? h.tryDispatch(*cls, inv->method) : nullptr;
    if (!callee) {
      diagnostics_.push_back("dispatch failure at " +
                             siteName(&s, caller->method) + ": no target for '" +
                             inv->method.methodName + "' on receiver " +
                             receiver->obj()->name());
      return;
    }
  }
  const Context* ct = selector_->selectMethodContext(caller, s, *callee, receiver);
  const CSMethod* csCallee = universe_->cs.csMethod(ct, callee);
  // The receiver flows into `this` for every (receiver, callee-context)
  // pair, whether or not the edge is new.
  if (const ir::MethodBody* body = callee->body(); body && body->thisVar()) {
    enqueue(universe_->cs.csVar(ct, body->thisVar()), receiver);
  }
  addCallEdge(CallEdge{universe_->cs.csCallSite(caller->context, &s,
                                                caller->method),
                       csCallee, inv->kind});
}

void Solver::addCallEdge(const CallEdge& edge) {
  if (!universe_->callGraph.addEdge(edge)) return;
  addReachable(edge.callee);
  linkCallEdge(edge);
  ++stats_.callEdgeEvents;
  plugins_.onNewCallEdge(edge);
}

void Solver::linkCallEdge(const CallEdge& edge) {
  const auto* inv = edge.callSite->invoke();
  const ir::MethodDecl* callee = edge.callee->method;
  const ir::MethodBody* body = callee->body();
  if (!body) return;
  const Context* callerCtx = edge.callSite->context;
  const Context* calleeCtx = edge.callee->context;
  CSManager& cs = universe_->cs;

  for (size_t i = 0; i < inv->args.size(); ++i) {
    addPfgEdge(cs.csVar(callerCtx, inv->args[i]),
               cs.csVar(calleeCtx, body->params()[i]));
  }
  if (inv->result) {
    for (const ir::Stmt& s : body->stmts()) {
      if (const auto* ret = s.as<ir::Return>(); ret && ret->value) {
        addPfgEdge(cs.csVar(calleeCtx, ret->value),
                   cs.csVar(callerCtx, inv->result));
      }
    }
  }
}

void Solver::addStmts(const CSMethod* method, std::vector<ir::Stmt> stmts) {
  if (!universe_->callGraph.isReachable(method)) {
    throw std::invalid_argument("addStmts: method " + method->repr() +
                                " is not reachable");
  }
  const ir::MethodBody* body = method->method->body();
  int base = body ? static_cast<int>(body->stmts().size()) : 0;
  int& count = synthCount_[method->method];
  for (ir::Stmt& s : stmts) {
    s.index = base + count++;
    synthStmts_.push_back(std::move(s));
    processStmt(method, synthStmts_.back());
  }
}

PTAResult solvePointerAnalysis(const ir::Program& program,
                               std::span<const ir::MethodDecl* const> entries,
                               ContextSelector& selector,
                               const std::vector<plugin::Plugin*>& plugins,
                               SolverOptions options) {
  Solver solver(program, std::move(options));
  return solver.solve(entries, selector, plugins);
}

}  // namespace spa::pta
