#include "spa/pta/pointer.hpp"

namespace spa::pta {

std::vector<const CSObj*> PointsToSet::toVector() const {
  std::vector<const CSObj*> out;
  forEach([&out](const CSObj* o) { out.push_back(o); });
  return out;
}

const CSObj* CSManager::csObj(const Context* heapContext, const Obj* obj,
                              const Context* emptyContext) {
  if (obj->isConstant()) heapContext = emptyContext;
  auto key = std::make_pair(heapContext, obj);
  auto it = csObjs_.find(key);
  if (it != csObjs_.end()) return it->second;
  csObjStorage_.push_back(CSObj());
  CSObj* o = &csObjStorage_.back();
  o->heapContext_ = heapContext;
  o->obj_ = obj;
  o->index_ = static_cast<uint32_t>(csObjList_.size());
  csObjList_.push_back(o);
  csObjs_[key] = o;
  return o;
}

CSVar* CSManager::csVar(const Context* context, const ir::Var* v) {
  auto key = std::make_pair(context, v);
  auto it = csVars_.find(key);
  if (it != csVars_.end()) return it->second;
  auto ptr = std::unique_ptr<CSVar>(new CSVar(this, context, v));
  CSVar* raw = ptr.get();
  pointerStorage_.push_back(std::move(ptr));
  pointerList_.push_back(raw);
  csVars_[key] = raw;
  return raw;
}

CSVar* CSManager::findCsVar(const Context* context, const ir::Var* v) const {
  auto it = csVars_.find(std::make_pair(context, v));
  return it == csVars_.end() ? nullptr : it->second;
}

InstanceFieldPtr* CSManager::instanceField(const CSObj* base,
                                           const ir::FieldDecl* f) {
  auto key = std::make_pair(base, f);
  auto it = instanceFields_.find(key);
  if (it != instanceFields_.end()) return it->second;
  auto ptr = std::unique_ptr<InstanceFieldPtr>(new InstanceFieldPtr(this, base, f));
  InstanceFieldPtr* raw = ptr.get();
  pointerStorage_.push_back(std::move(ptr));
  pointerList_.push_back(raw);
  instanceFields_[key] = raw;
  return raw;
}

ArrayIndexPtr* CSManager::arrayIndex(const CSObj* array) {
  auto it = arrayIndexes_.find(array);
  if (it != arrayIndexes_.end()) return it->second;
  auto ptr = std::unique_ptr<ArrayIndexPtr>(new ArrayIndexPtr(this, array));
  ArrayIndexPtr* raw = ptr.get();
  pointerStorage_.push_back(std::move(ptr));
  pointerList_.push_back(raw);
  arrayIndexes_[array] = raw;
  return raw;
}

StaticFieldPtr* CSManager::staticField(const ir::FieldDecl* f) {
  auto it = staticFields_.find(f);
  if (it != staticFields_.end()) return it->second;
  auto ptr = std::unique_ptr<StaticFieldPtr>(new StaticFieldPtr(this, f));
  StaticFieldPtr* raw = ptr.get();
  pointerStorage_.push_back(std::move(ptr));
  pointerList_.push_back(raw);
  staticFields_[f] = raw;
  return raw;
}

const CSMethod* CSManager::csMethod(const Context* context,
                                    const ir::MethodDecl* m) {
  auto key = std::make_pair(context, m);
  auto it = csMethods_.find(key);
  if (it != csMethods_.end()) return it->second;
  csMethodStorage_.push_back(CSMethod{context, m});
  csMethods_[key] = &csMethodStorage_.back();
  return &csMethodStorage_.back();
}

const CSCallSite* CSManager::csCallSite(const Context* context,
                                        const ir::Stmt* site,
                                        const ir::MethodDecl* container) {
  auto key = std::make_pair(context, site);
  auto it = csCallSites_.find(key);
  if (it != csCallSites_.end()) return it->second;
  csCallSiteStorage_.push_back(CSCallSite{context, site, container});
  csCallSites_[key] = &csCallSiteStorage_.back();
  return &csCallSiteStorage_.back();
}

}  // namespace spa::pta
