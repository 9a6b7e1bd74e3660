#include "spa/pta/object.hpp"

namespace spa::pta {

std::string siteName(const ir::Stmt* stmt, const ir::MethodDecl* method) {
  if (!stmt) return "none";
  std::string m = method ? method->signature() : "?";
  return m + "/" + std::to_string(stmt->index);
}

const Obj* HeapManager::objForAlloc(const ir::Stmt& newStmt,
                                    const ir::MethodDecl& container) {
  const auto* n = newStmt.as<ir::New>();
  auto it = newObjs_.find(&newStmt);
  const Obj* site;
  if (it != newObjs_.end()) {
    site = it->second;
  } else {
    Obj* o = fresh();
    o->kind_ = Obj::Kind::New;
    o->type_ = n->type;
    o->site_ = &newStmt;
    o->container_ = &container;
    o->name_ = "new " + n->type.toString() + "@" + siteName(&newStmt, &container);
    newObjs_[&newStmt] = o;
    site = o;
  }
  if (n->type.isClass() && isMergedType(n->type.className())) {
    Obj* merged = const_cast<Obj*>(mergedObj(n->type));
    bool known = false;
    for (const Obj* origin : merged->origins_) known |= origin == site;
    if (!known) merged->origins_.push_back(site);
    return merged;
  }
  return site;
}

const Obj* HeapManager::constantObj(const ir::Type& type,
                                    const ir::Literal& value) {
  std::string name = "const:" + type.toString() + ":" + value.toString();
  auto it = constantObjs_.find(name);
  if (it != constantObjs_.end()) return it->second;
  Obj* o = fresh();
  o->kind_ = Obj::Kind::Constant;
  o->type_ = type;
  o->value_ = value;
  o->name_ = std::move(name);
  constantObjs_[o->name_] = o;
  return o;
}

const Obj* HeapManager::mergedObj(const ir::Type& type) {
  auto it = mergedObjs_.find(type.toString());
  if (it != mergedObjs_.end()) return it->second;
  Obj* o = fresh();
  o->kind_ = Obj::Kind::Merged;
  o->type_ = type;
  o->name_ = "merged:" + type.toString();
  mergedObjs_[type.toString()] = o;
  return o;
}

const Obj* HeapManager::mockObj(const std::string& descriptor,
                                const ir::Stmt* source,
                                const ir::MethodDecl* sourceMethod,
                                const ir::Type& type) {
  auto key = std::make_pair(descriptor, source);
  auto it = mockObjs_.find(key);
  if (it != mockObjs_.end()) return it->second;
  Obj* o = fresh();
  o->kind_ = Obj::Kind::Mock;
  o->type_ = type;
  o->site_ = source;
  o->container_ = sourceMethod;
  o->descriptor_ = descriptor;
  o->name_ = "mock:" + descriptor + "@" + siteName(source, sourceMethod);
  mockObjs_[key] = o;
  return o;
}

}  // namespace spa::pta
