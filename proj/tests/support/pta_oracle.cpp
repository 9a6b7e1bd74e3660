#include "support/pta_oracle.hpp"

#include <algorithm>

#include "spa/ir/hierarchy.hpp"

namespace spa::testsupport {

namespace {

using spa::ir::ClassDecl;
using spa::ir::FieldDecl;
using spa::ir::Hierarchy;
using spa::ir::MethodBody;
using spa::ir::MethodDecl;
using spa::ir::Program;
using spa::ir::Stmt;
using spa::ir::Type;
using spa::ir::Var;

struct OObj {
  std::string name;
  Type type;
  bool isTaint = false;
  const Stmt* taintSource = nullptr;
  const MethodDecl* taintSourceMethod = nullptr;
};

std::string oracleSiteName(const Stmt* s, const MethodDecl* m) {
  return m->signature() + "/" + std::to_string(s->index);
}

class Oracle {
 public:
  Oracle(const Program& program, OracleOptions options,
         const plugin::TaintConfig* taint)
      : program_(program),
        hierarchy_(program.hierarchy()),
        options_(options),
        taint_(taint) {}

  ComparableResult run() {
    for (const MethodDecl* entry : program_.entryMethods()) reach(entry);
    bool changed = true;
    while (changed) {
      changed = false;
      // Snapshot: sweeping may add methods mid-flight.
      for (size_t i = 0; i < reachableList_.size(); ++i) {
        const MethodDecl* m = reachableList_[i];
        if (!m->body()) continue;
        for (const Stmt& s : m->body()->stmts()) changed |= apply(m, s);
      }
      if (taint_) changed |= applyTaint();
    }
    return finish();
  }

 private:
  int intern(OObj obj) {
    auto it = objByName_.find(obj.name);
    if (it != objByName_.end()) return it->second;
    int id = static_cast<int>(objs_.size());
    objByName_[obj.name] = id;
    objs_.push_back(std::move(obj));
    return id;
  }

  bool reach(const MethodDecl* m) {
    if (!reachable_.insert(m).second) return false;
    reachableList_.push_back(m);
    return true;
  }

  bool flowInto(std::set<int>& target, int obj) {
    return target.insert(obj).second;
  }

  bool flowFiltered(const std::set<int>& source, std::set<int>& target,
                    const Type* filter) {
    bool changed = false;
    for (int id : source) {
      if (filter && !hierarchy_.isSubtype(objs_[id].type, *filter)) continue;
      changed |= target.insert(id).second;
    }
    return changed;
  }

  bool apply(const MethodDecl* m, const Stmt& s) {
    bool changed = false;
    if (const auto* n = s.as<ir::New>()) {
      int id = intern({"new " + n->type.toString() + "@" + oracleSiteName(&s, m),
                       n->type});
      changed |= flowInto(varPt_[n->lhs], id);
    } else if (const auto* lit = s.as<ir::AssignLiteral>()) {
      if (lit->value.isString()) {
        Type t = Type::classType(ir::builtin::kString);
        int id = intern(
            {"const:" + t.toString() + ":" + lit->value.toString(), t});
        changed |= flowInto(varPt_[lit->lhs], id);
      }
    } else if (const auto* copy = s.as<ir::Copy>()) {
      const Type* filter = nullptr;
      if (options_.typeFilter && copy->lhs->type.isReference())
        filter = &copy->lhs->type;
      changed |= flowFiltered(varPt_[copy->rhs], varPt_[copy->lhs], filter);
    } else if (const auto* cast = s.as<ir::Cast>()) {
      const Type* filter = options_.typeFilter ? &cast->target : nullptr;
      changed |= flowFiltered(varPt_[cast->rhs], varPt_[cast->lhs], filter);
    } else if (const auto* load = s.as<ir::LoadField>()) {
      if (load->base) {
        for (int base : varPt_[load->base]) {
          changed |= flowFiltered(fieldPt_[{base, load->field.resolved}],
                                  varPt_[load->lhs], nullptr);
        }
      } else {
        changed |= flowFiltered(staticPt_[load->field.resolved],
                                varPt_[load->lhs], nullptr);
      }
    } else if (const auto* store = s.as<ir::StoreField>()) {
      if (store->base) {
        for (int base : varPt_[store->base]) {
          changed |= flowFiltered(varPt_[store->rhs],
                                  fieldPt_[{base, store->field.resolved}],
                                  nullptr);
        }
      } else {
        changed |= flowFiltered(varPt_[store->rhs],
                                staticPt_[store->field.resolved], nullptr);
      }
    } else if (const auto* load = s.as<ir::LoadArray>()) {
      for (int base : varPt_[load->base])
        changed |= flowFiltered(arrayPt_[base], varPt_[load->lhs], nullptr);
    } else if (const auto* store = s.as<ir::StoreArray>()) {
      for (int base : varPt_[store->base])
        changed |= flowFiltered(varPt_[store->rhs], arrayPt_[base], nullptr);
    } else if (const auto* inv = s.as<ir::Invoke>()) {
      changed |= applyInvoke(m, s, *inv);
    }
    return changed;
  }

  bool applyInvoke(const MethodDecl* m, const Stmt& s, const ir::Invoke& inv) {
    bool changed = false;
    if (inv.kind == ir::InvokeKind::Static) {
      changed |= link(m, s, inv, inv.method.resolved, /*receiver=*/-1);
      return changed;
    }
    // Receiver-driven: iterate a snapshot, linking may grow other sets.
    std::vector<int> receivers(varPt_[inv.base].begin(),
                               varPt_[inv.base].end());
    for (int recv : receivers) {
      const MethodDecl* callee;
      if (inv.kind == ir::InvokeKind::Special) {
        callee = inv.method.resolved;
      } else {
        const Type& t = objs_[recv].type;
        const ClassDecl* cls =
            t.isClass() ? hierarchy_.classByName(t.className()) : nullptr;
        callee = cls ? hierarchy_.tryDispatch(*cls, inv.method) : nullptr;
        if (!callee) continue;  // dispatch failure: call edge skipped
      }
      changed |= link(m, s, inv, callee, recv);
    }
    return changed;
  }

  bool link(const MethodDecl* caller, const Stmt& s, const ir::Invoke& inv,
            const MethodDecl* callee, int receiver) {
    bool changed = callEdges_.insert({&s, caller, callee}).second;
    changed |= reach(callee);
    const MethodBody* body = callee->body();
    if (!body) return changed;
    if (receiver >= 0 && body->thisVar())
      changed |= flowInto(varPt_[body->thisVar()], receiver);
    for (size_t i = 0; i < inv.args.size(); ++i) {
      changed |=
          flowFiltered(varPt_[inv.args[i]], varPt_[body->params()[i]], nullptr);
    }
    if (inv.result) {
      for (const Stmt& ret : body->stmts()) {
        if (const auto* r = ret.as<ir::Return>(); r && r->value) {
          changed |=
              flowFiltered(varPt_[r->value], varPt_[inv.result], nullptr);
        }
      }
    }
    return changed;
  }

  bool applyTaint() {
    bool changed = false;
    for (const auto& [site, caller, callee] : callEdges_) {
      const auto* inv = site->as<ir::Invoke>();
      for (const auto& src : taint_->sources) {
        if (src.method != callee || !inv->result) continue;
        Type t = callee->returnType();
        int id = intern({"mock:TaintObj@" + oracleSiteName(site, caller), t,
                         /*isTaint=*/true, site, caller});
        changed |= flowInto(varPt_[inv->result], id);
      }
      for (const auto& rule : taint_->transfers) {
        if (rule.method != callee) continue;
        const Var* from = resolveSpec(*inv, rule.from);
        const Var* to = resolveSpec(*inv, rule.to);
        if (!from || !to) continue;
        for (int id : varPt_[from]) {
          if (objs_[id].isTaint) changed |= flowInto(varPt_[to], id);
        }
      }
    }
    return changed;
  }

  static const Var* resolveSpec(const ir::Invoke& inv,
                                const plugin::TaintVarSpec& spec) {
    switch (spec.role) {
      case plugin::TaintVarSpec::Role::Base: return inv.base;
      case plugin::TaintVarSpec::Role::Result: return inv.result;
      case plugin::TaintVarSpec::Role::Param:
        return spec.paramIndex < static_cast<int>(inv.args.size())
                   ? inv.args[spec.paramIndex]
                   : nullptr;
    }
    return nullptr;
  }

  ComparableResult finish() {
    ComparableResult out;
    for (const auto& [var, objs] : varPt_) {
      if (objs.empty()) continue;
      auto& names = out.varPt[var->qualifiedName()];
      for (int id : objs) names.insert(objs_[id].name);
    }
    for (const MethodDecl* m : reachableList_) out.reachable.insert(m->signature());
    for (const auto& [site, caller, callee] : callEdges_) {
      out.callEdges.insert(oracleSiteName(site, caller) + " -> " +
                           callee->signature());
    }
    if (taint_) {
      std::set<std::string> flows;
      for (const auto& sink : taint_->sinks) {
        for (const auto& [site, caller, callee] : callEdges_) {
          if (callee != sink.method) continue;
          const auto* inv = site->as<ir::Invoke>();
          if (sink.paramIndex >= static_cast<int>(inv->args.size())) continue;
          for (int id : varPt_[inv->args[sink.paramIndex]]) {
            if (!objs_[id].isTaint) continue;
            auto shortSite = [](const Stmt* s, const MethodDecl* m) {
              return m->owner().name() + "." + m->name() + "@" +
                     std::to_string(s->index);
            };
            flows.insert(
                "LEAK source=" +
                shortSite(objs_[id].taintSource, objs_[id].taintSourceMethod) +
                " sink=" + shortSite(site, caller) +
                " param=" + std::to_string(sink.paramIndex));
          }
        }
      }
      out.taintFlows.assign(flows.begin(), flows.end());
    }
    return out;
  }

  const Program& program_;
  const Hierarchy& hierarchy_;
  OracleOptions options_;
  const plugin::TaintConfig* taint_;

  std::vector<OObj> objs_;
  std::map<std::string, int> objByName_;
  std::map<const Var*, std::set<int>> varPt_;
  std::map<std::pair<int, const FieldDecl*>, std::set<int>> fieldPt_;
  std::map<int, std::set<int>> arrayPt_;
  std::map<const FieldDecl*, std::set<int>> staticPt_;
  std::set<const MethodDecl*> reachable_;
  std::vector<const MethodDecl*> reachableList_;
  std::set<std::tuple<const Stmt*, const MethodDecl*, const MethodDecl*>>
      callEdges_;
};

}  // namespace

ComparableResult ciOracle(const ir::Program& program, OracleOptions options,
                          const plugin::TaintConfig* taint) {
  return Oracle(program, options, taint).run();
}

ComparableResult toComparable(const pta::PTAResult& result,
                              const std::vector<plugin::TaintFlow>& flows) {
  ComparableResult out;
  for (const auto& [var, objs] : result.ptCi()) {
    auto& names = out.varPt[var->qualifiedName()];
    for (const pta::Obj* o : objs) names.insert(o->name());
  }
  for (const ir::MethodDecl* m : result.callGraph().reachableMethodsCI()) {
    out.reachable.insert(m->signature());
  }
  for (const pta::CallEdge& e : result.callGraph().edges()) {
    out.callEdges.insert(
        pta::siteName(e.callSite->site, e.callSite->container) + " -> " +
        e.callee->method->signature());
  }
  std::set<std::string> flowLines;
  for (const plugin::TaintFlow& f : flows) flowLines.insert(f.toString());
  out.taintFlows.assign(flowLines.begin(), flowLines.end());
  return out;
}

bool isSubsetOf(const ComparableResult& a, const ComparableResult& b) {
  for (const auto& [var, objs] : a.varPt) {
    auto it = b.varPt.find(var);
    if (it == b.varPt.end()) return false;
    if (!std::includes(it->second.begin(), it->second.end(), objs.begin(),
                       objs.end())) {
      return false;
    }
  }
  return std::includes(b.reachable.begin(), b.reachable.end(),
                       a.reachable.begin(), a.reachable.end()) &&
         std::includes(b.callEdges.begin(), b.callEdges.end(),
                       a.callEdges.begin(), a.callEdges.end());
}

}  // namespace spa::testsupport
