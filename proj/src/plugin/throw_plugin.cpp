#include "spa/plugin/throw_plugin.hpp"

namespace spa::plugin {

void ThrowPropagationPlugin::onNewMethod(const pta::CSMethod* m) {
  const ir::MethodBody* body = m->method->body();
  if (!body || throwSites_.count(body)) return;
  auto& sites = throwSites_[body];
  for (const ir::Stmt& s : body->stmts()) {
    if (const auto* t = s.as<ir::Throw>()) sites.push_back({&s, t->var});
  }
}

void ThrowPropagationPlugin::onNewPointsToSet(pta::CSVar* v,
                                              const pta::PointsToSet& delta) {
  const ir::MethodBody* body = v->var()->method->body();
  auto it = throwSites_.find(body);
  if (it == throwSites_.end()) return;
  const ir::Hierarchy& h = solver_->hierarchy();
  for (const ThrowSite& site : it->second) {
    if (site.var != v->var()) continue;
    auto handlers = body->handlersFor(site.stmt->index);
    delta.forEach([&](const pta::CSObj* o) {
      for (const auto& handler : handlers) {
        if (!h.isSubtype(o->obj()->type(), handler.catchType)) continue;
        const auto* entry =
            body->stmts()[handler.handlerIndex].as<ir::Catch>();
        solver_->addPointsTo(solver_->cs().csVar(v->context(), entry->lhs), o);
        return;
      }
      if (escapedSet_.insert({site.stmt, o->obj()}).second) {
        escaped_.push_back({site.stmt, v->var()->method, o->obj()});
      }
    });
  }
}

std::string ThrowPropagationPlugin::report() const {
  std::string out;
  for (const Escape& e : escaped_) {
    out += "ESCAPE " + pta::siteName(e.throwSite, e.method) + " " +
           e.obj->name() + "\n";
  }
  return out;
}

}  // namespace spa::plugin
