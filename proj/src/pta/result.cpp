#include "spa/pta/result.hpp"

#include <algorithm>
#include <sstream>

namespace spa::pta {

PTAResult::PTAResult(std::shared_ptr<Universe> universe, SolverStats stats,
                     std::vector<std::string> diagnostics)
    : universe_(std::move(universe)),
      stats_(stats),
      diagnostics_(std::move(diagnostics)) {
  for (Pointer* p : universe_->cs.pointers()) {
    if (p->kind() != Pointer::Kind::Var) continue;
    auto* v = static_cast<CSVar*>(p);
    if (v->pts().empty()) continue;
    auto& objs = ptCi_[v->var()];
    v->pts().forEach([&objs](const CSObj* o) { objs.insert(o->obj()); });
  }
}

size_t PTAResult::varPtCount() const {
  size_t n = 0;
  for (const auto& [var, objs] : ptCi_) n += objs.size();
  return n;
}

CSVar* PTAResult::varPointer(const ir::Var* v, const Context* ctx) const {
  if (!ctx) ctx = universe_->contexts.empty();
  return universe_->cs.findCsVar(ctx, v);
}

Pointer* PTAResult::instanceFieldPointer(const std::string& objName,
                                         const std::string& fieldName) const {
  for (Pointer* p : universe_->cs.pointers()) {
    if (p->kind() != Pointer::Kind::InstanceField) continue;
    auto* f = static_cast<InstanceFieldPtr*>(p);
    if (f->base()->obj()->name() == objName && f->field()->name == fieldName)
      return p;
  }
  return nullptr;
}

std::string PTAResult::dump() const {
  std::ostringstream out;
  std::vector<std::string> lines;
  for (const auto& [var, objs] : ptCi_) {
    std::vector<std::string> names;
    for (const Obj* o : objs) names.push_back(o->name());
    std::sort(names.begin(), names.end());
    std::string line = var->qualifiedName() + " -> {";
    for (size_t i = 0; i < names.size(); ++i) {
      if (i) line += ", ";
      line += names[i];
    }
    lines.push_back(line + "}");
  }
  std::sort(lines.begin(), lines.end());
  out << "points-to:\n";
  for (const auto& l : lines) out << "  " << l << "\n";

  lines.clear();
  for (const auto& [site, callee] : callGraph().edgesCI()) {
    const ir::MethodDecl* container = nullptr;
    // The container is recorded on the CS call site; recover any.
    for (const CallEdge& e : callGraph().edges()) {
      if (e.callSite->site == site && e.callee->method == callee) {
        container = e.callSite->container;
        break;
      }
    }
    lines.push_back(siteName(site, container) + " -> " + callee->signature());
  }
  std::sort(lines.begin(), lines.end());
  out << "call-graph:\n";
  for (const auto& l : lines) out << "  " << l << "\n";

  out << "#varpt " << varPtCount() << "\n";
  out << "#reach " << reachCount() << "\n";
  out << "#edges " << edgeCount() << "\n";
  return out.str();
}

}  // namespace spa::pta
