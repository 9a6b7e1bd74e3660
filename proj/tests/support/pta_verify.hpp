// Fixpoint replay: re-applies every pointer-analysis rule over every
// reachable context-qualified statement and checks that nothing new would be
// added. Subset checks only; independent of the solver's worklist machinery.
#pragma once

#include <string>
#include <vector>

#include "spa/pta/result.hpp"
#include "spa/pta/solver.hpp"

namespace spa::testsupport {

class FixpointVerifier {
 public:
  FixpointVerifier(const pta::PTAResult& result, pta::ContextSelector& selector,
                   bool typeFilter = true)
      : result_(result),
        u_(*result.universePtr()),
        selector_(selector),
        typeFilter_(typeFilter) {
    selector_.bind(u_.contexts);
  }

  // Empty when the result is a fixpoint; otherwise one message per violated
  // rule instance.
  std::vector<std::string> violations() {
    for (const pta::CSMethod* csm : u_.callGraph.reachableMethods()) {
      const ir::MethodBody* body = csm->method->body();
      if (!body) continue;
      for (const ir::Stmt& s : body->stmts()) check(csm, s);
    }
    return std::move(violations_);
  }

 private:
  using PtsView = std::vector<const pta::CSObj*>;

  PtsView ptsOf(pta::Pointer* p) const {
    return p ? p->pts().toVector() : PtsView{};
  }
  pta::CSVar* var(const pta::Context* c, const ir::Var* v) const {
    return u_.cs.findCsVar(c, v);
  }

  void requireSubset(const PtsView& objs, pta::Pointer* target,
                     const std::optional<ir::Type>& filter,
                     const std::string& what) {
    const ir::Hierarchy& h = u_.program->hierarchy();
    for (const pta::CSObj* o : objs) {
      if (filter && !h.isSubtype(o->obj()->type(), *filter)) continue;
      if (!target || !target->pts().contains(o)) {
        violations_.push_back(what + ": missing " + o->name());
      }
    }
  }

  void check(const pta::CSMethod* csm, const ir::Stmt& s) {
    const pta::Context* c = csm->context;
    const ir::Hierarchy& h = u_.program->hierarchy();

    if (const auto* n = s.as<ir::New>()) {
      const pta::Obj* obj = u_.heap.objForAlloc(s, *csm->method);
      const pta::Context* hctx = obj->isNew()
                                     ? selector_.selectHeapContext(csm, s)
                                     : u_.contexts.empty();
      const pta::CSObj* cso = u_.cs.csObj(hctx, obj, u_.contexts.empty());
      pta::CSVar* lhs = var(c, n->lhs);
      if (!lhs || !lhs->pts().contains(cso))
        violations_.push_back("new at " + pta::siteName(&s, csm->method));
    } else if (const auto* lit = s.as<ir::AssignLiteral>()) {
      if (lit->value.isString()) {
        const pta::Obj* obj = u_.heap.constantObj(
            ir::Type::classType(ir::builtin::kString), lit->value);
        const pta::CSObj* cso =
            u_.cs.csObj(u_.contexts.empty(), obj, u_.contexts.empty());
        pta::CSVar* lhs = var(c, lit->lhs);
        if (!lhs || !lhs->pts().contains(cso))
          violations_.push_back("string literal at " +
                                pta::siteName(&s, csm->method));
      }
    } else if (const auto* copy = s.as<ir::Copy>()) {
      std::optional<ir::Type> filter;
      if (typeFilter_ && copy->lhs->type.isReference())
        filter = copy->lhs->type;
      requireSubset(ptsOf(var(c, copy->rhs)), var(c, copy->lhs), filter,
                    "copy at " + pta::siteName(&s, csm->method));
    } else if (const auto* cast = s.as<ir::Cast>()) {
      std::optional<ir::Type> filter;
      if (typeFilter_) filter = cast->target;
      requireSubset(ptsOf(var(c, cast->rhs)), var(c, cast->lhs), filter,
                    "cast at " + pta::siteName(&s, csm->method));
    } else if (const auto* load = s.as<ir::LoadField>()) {
      if (load->base) {
        for (const pta::CSObj* o : ptsOf(var(c, load->base))) {
          requireSubset(
              ptsOf(u_.cs.instanceField(o, load->field.resolved)),
              var(c, load->lhs), std::nullopt,
              "field load at " + pta::siteName(&s, csm->method));
        }
      } else {
        requireSubset(ptsOf(u_.cs.staticField(load->field.resolved)),
                      var(c, load->lhs), std::nullopt,
                      "static load at " + pta::siteName(&s, csm->method));
      }
    } else if (const auto* store = s.as<ir::StoreField>()) {
      if (store->base) {
        for (const pta::CSObj* o : ptsOf(var(c, store->base))) {
          requireSubset(ptsOf(var(c, store->rhs)),
                        u_.cs.instanceField(o, store->field.resolved),
                        std::nullopt,
                        "field store at " + pta::siteName(&s, csm->method));
        }
      } else {
        requireSubset(ptsOf(var(c, store->rhs)),
                      u_.cs.staticField(store->field.resolved), std::nullopt,
                      "static store at " + pta::siteName(&s, csm->method));
      }
    } else if (const auto* load = s.as<ir::LoadArray>()) {
      for (const pta::CSObj* o : ptsOf(var(c, load->base))) {
        requireSubset(ptsOf(u_.cs.arrayIndex(o)), var(c, load->lhs),
                      std::nullopt,
                      "array load at " + pta::siteName(&s, csm->method));
      }
    } else if (const auto* store = s.as<ir::StoreArray>()) {
      for (const pta::CSObj* o : ptsOf(var(c, store->base))) {
        requireSubset(ptsOf(var(c, store->rhs)), u_.cs.arrayIndex(o),
                      std::nullopt,
                      "array store at " + pta::siteName(&s, csm->method));
      }
    } else if (const auto* inv = s.as<ir::Invoke>()) {
      if (inv->kind == ir::InvokeKind::Static) {
        checkCall(csm, s, *inv, inv->method.resolved, nullptr);
      } else {
        for (const pta::CSObj* recv : ptsOf(var(c, inv->base))) {
          const ir::MethodDecl* callee;
          if (inv->kind == ir::InvokeKind::Special) {
            callee = inv->method.resolved;
          } else {
            const ir::Type& t = recv->obj()->type();
            const ir::ClassDecl* cls =
                t.isClass() ? h.classByName(t.className()) : nullptr;
            callee = cls ? h.tryDispatch(*cls, inv->method) : nullptr;
            if (!callee) continue;  // skipped by the solver too
          }
          checkCall(csm, s, *inv, callee, recv);
        }
      }
    }
  }

  void checkCall(const pta::CSMethod* caller, const ir::Stmt& s,
                 const ir::Invoke& inv, const ir::MethodDecl* callee,
                 const pta::CSObj* receiver) {
    const pta::Context* ct =
        selector_.selectMethodContext(caller, s, *callee, receiver);
    const pta::CSMethod* csCallee = u_.cs.csMethod(ct, callee);
    std::string where = "call at " + pta::siteName(&s, caller->method);
    if (!u_.callGraph.isReachable(csCallee))
      violations_.push_back(where + ": callee unreachable");
    const ir::MethodBody* body = callee->body();
    if (!body) return;
    if (receiver && body->thisVar()) {
      pta::CSVar* thisVar = var(ct, body->thisVar());
      if (!thisVar || !thisVar->pts().contains(receiver))
        violations_.push_back(where + ": receiver not bound to this");
    }
    for (size_t i = 0; i < inv.args.size(); ++i) {
      requireSubset(ptsOf(var(caller->context, inv.args[i])),
                    var(ct, body->params()[i]), std::nullopt,
                    where + ": arg " + std::to_string(i));
    }
    if (inv.result) {
      for (const ir::Stmt& ret : body->stmts()) {
        if (const auto* r = ret.as<ir::Return>(); r && r->value) {
          requireSubset(ptsOf(var(ct, r->value)),
                        var(caller->context, inv.result), std::nullopt,
                        where + ": return");
        }
      }
    }
  }

  const pta::PTAResult& result_;
  pta::Universe& u_;
  pta::ContextSelector& selector_;
  bool typeFilter_;
  std::vector<std::string> violations_;
};

}  // namespace spa::testsupport
