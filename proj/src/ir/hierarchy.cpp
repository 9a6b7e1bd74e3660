#include "spa/ir/hierarchy.hpp"

#include <deque>
#include <set>

namespace spa::ir {

Hierarchy::Hierarchy(const Program& program) : program_(&program) {
  for (const ClassDecl* c : program.classes()) {
    if (c->superclass()) directSubs_[c->superclass()].push_back(c);
    for (const ClassDecl* i : c->interfaces()) directSubs_[i].push_back(c);
  }
}

const ClassDecl* Hierarchy::classByName(std::string_view name) const {
  return program_->classByName(name);
}

bool Hierarchy::isSubclassOf(const ClassDecl& sub, const ClassDecl& sup) const {
  if (&sub == &sup) return true;
  std::deque<const ClassDecl*> work{&sub};
  std::set<const ClassDecl*> seen;
  while (!work.empty()) {
    const ClassDecl* c = work.front();
    work.pop_front();
    if (c == &sup) return true;
    if (!seen.insert(c).second) continue;
    if (c->superclass()) work.push_back(c->superclass());
    for (const ClassDecl* i : c->interfaces()) work.push_back(i);
  }
  return false;
}

bool Hierarchy::isSubtype(const Type& sub, const Type& sup) const {
  if (sub == sup) return true;
  if (sub.isNull()) return sup.isReference();
  if (sub.isArray()) {
    // Arrays sit below Object and are covariant in reference element types.
    if (sup.isClass()) return sup.className() == builtin::kObject;
    if (sup.isArray()) {
      const Type& se = sub.element();
      const Type& pe = sup.element();
      return se.isReference() && pe.isReference() && isSubtype(se, pe);
    }
    return false;
  }
  if (sub.isClass() && sup.isClass()) {
    const ClassDecl* c = classByName(sub.className());
    const ClassDecl* p = classByName(sup.className());
    return c && p && isSubclassOf(*c, *p);
  }
  return false;
}

const MethodDecl* Hierarchy::tryDispatch(const ClassDecl& receiver,
                                         const MethodRef& ref) const {
  for (const ClassDecl* c = &receiver; c; c = c->superclass()) {
    const MethodDecl* m = c->findMethod(ref.methodName);
    if (m && !m->isAbstract()) return m;
  }
  return nullptr;
}

const MethodDecl* Hierarchy::dispatch(const ClassDecl& receiver,
                                      const MethodRef& ref) const {
  const MethodDecl* m = tryDispatch(receiver, ref);
  if (!m) {
    throw HierarchyError("dispatch failure: no implementation of '" +
                         ref.methodName + "' found from receiver class '" +
                         receiver.name() + "'");
  }
  return m;
}

const MethodDecl* Hierarchy::resolveMethod(std::string_view className,
                                           std::string_view methodName) const {
  const ClassDecl* start = classByName(className);
  if (!start) return nullptr;
  if (!start->isInterface()) {
    for (const ClassDecl* c = start; c; c = c->superclass()) {
      if (const MethodDecl* m = c->findMethod(methodName)) return m;
    }
    return nullptr;
  }
  std::deque<const ClassDecl*> work{start};
  std::set<const ClassDecl*> seen;
  while (!work.empty()) {
    const ClassDecl* c = work.front();
    work.pop_front();
    if (!seen.insert(c).second) continue;
    if (const MethodDecl* m = c->findMethod(methodName)) return m;
    for (const ClassDecl* i : c->interfaces()) work.push_back(i);
  }
  return nullptr;
}

std::pair<const ClassDecl*, const FieldDecl*> Hierarchy::tryResolveField(
    std::string_view className, std::string_view fieldName) const {
  for (const ClassDecl* c = classByName(className); c; c = c->superclass()) {
    if (const FieldDecl* f = c->findField(fieldName)) return {c, f};
  }
  return {nullptr, nullptr};
}

std::pair<const ClassDecl*, const FieldDecl*> Hierarchy::resolveField(
    std::string_view className, std::string_view fieldName) const {
  auto r = tryResolveField(className, fieldName);
  if (!r.second) {
    throw HierarchyError("field '" + std::string(fieldName) +
                         "' not found from class '" + std::string(className) +
                         "'");
  }
  return r;
}

std::vector<const ClassDecl*> Hierarchy::subclassesOf(
    std::string_view name) const {
  std::vector<const ClassDecl*> out;
  const ClassDecl* root = classByName(name);
  if (!root) return out;
  std::deque<const ClassDecl*> work{root};
  std::set<const ClassDecl*> seen{root};
  while (!work.empty()) {
    const ClassDecl* c = work.front();
    work.pop_front();
    auto it = directSubs_.find(c);
    if (it == directSubs_.end()) continue;
    for (const ClassDecl* s : it->second) {
      if (seen.insert(s).second) {
        out.push_back(s);
        work.push_back(s);
      }
    }
  }
  return out;
}

}  // namespace spa::ir
