// Pointer-flow-graph nodes: context-qualified variables, instance fields and
// array cells of context-qualified objects, and static fields. Every pointer
// owns exactly one points-to set; CSManager interns them all.
#pragma once

#include <deque>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "spa/bitset/hybrid_set.hpp"
#include "spa/pta/context.hpp"
#include "spa/pta/object.hpp"

namespace spa::pta {

class CSManager;

// A heap object qualified by its heap context; interned, with a dense index
// so points-to sets can be bit sets.
class CSObj {
 public:
  const Context* heapContext() const { return heapContext_; }
  const Obj* obj() const { return obj_; }
  uint32_t index() const { return index_; }
  std::string name() const {
    if (heapContext_->isEmpty()) return obj_->name();
    return heapContext_->repr() + ":" + obj_->name();
  }

 private:
  friend class CSManager;
  const Context* heapContext_ = nullptr;
  const Obj* obj_ = nullptr;
  uint32_t index_ = 0;
};

class PointsToSet {
 public:
  PointsToSet() = default;
  explicit PointsToSet(const CSManager* manager) : manager_(manager) {}

  bool add(const CSObj* o) { return bits_.set(o->index()); }
  bool addAll(const PointsToSet& o) { return bits_.unionWith(o.bits_); }
  bool contains(const CSObj* o) const { return bits_.test(o->index()); }
  size_t size() const { return bits_.count(); }
  bool empty() const { return bits_.empty(); }

  template <typename F>
  void forEach(F f) const;  // ascending index order

  std::vector<const CSObj*> toVector() const;

 private:
  const CSManager* manager_ = nullptr;
  bits::HybridSet bits_;
};

class Pointer {
 public:
  enum class Kind { Var, InstanceField, ArrayIndex, StaticField };

  virtual ~Pointer() = default;

  Kind kind() const { return kind_; }
  PointsToSet& pts() { return pts_; }
  const PointsToSet& pts() const { return pts_; }
  virtual std::string repr() const = 0;

 protected:
  Pointer(Kind kind, const CSManager* manager) : kind_(kind), pts_(manager) {}

 private:
  Kind kind_;
  PointsToSet pts_;
};

class CSVar final : public Pointer {
 public:
  const Context* context() const { return context_; }
  const ir::Var* var() const { return var_; }
  std::string repr() const override {
    if (context_->isEmpty()) return var_->qualifiedName();
    return context_->repr() + ":" + var_->qualifiedName();
  }

 private:
  friend class CSManager;
  CSVar(const CSManager* m, const Context* c, const ir::Var* v)
      : Pointer(Kind::Var, m), context_(c), var_(v) {}
  const Context* context_;
  const ir::Var* var_;
};

class InstanceFieldPtr final : public Pointer {
 public:
  const CSObj* base() const { return base_; }
  const ir::FieldDecl* field() const { return field_; }
  std::string repr() const override {
    return base_->name() + "." + field_->name;
  }

 private:
  friend class CSManager;
  InstanceFieldPtr(const CSManager* m, const CSObj* base,
                   const ir::FieldDecl* field)
      : Pointer(Kind::InstanceField, m), base_(base), field_(field) {}
  const CSObj* base_;
  const ir::FieldDecl* field_;
};

class ArrayIndexPtr final : public Pointer {
 public:
  const CSObj* array() const { return array_; }
  std::string repr() const override { return array_->name() + "[*]"; }

 private:
  friend class CSManager;
  ArrayIndexPtr(const CSManager* m, const CSObj* array)
      : Pointer(Kind::ArrayIndex, m), array_(array) {}
  const CSObj* array_;
};

class StaticFieldPtr final : public Pointer {
 public:
  const ir::FieldDecl* field() const { return field_; }
  std::string repr() const override { return field_->qualifiedName(); }

 private:
  friend class CSManager;
  StaticFieldPtr(const CSManager* m, const ir::FieldDecl* field)
      : Pointer(Kind::StaticField, m), field_(field) {}
  const ir::FieldDecl* field_;
};

// A context-qualified method / call site; interned.
struct CSMethod {
  const Context* context;
  const ir::MethodDecl* method;
  std::string repr() const {
    if (context->isEmpty()) return method->signature();
    return context->repr() + ":" + method->signature();
  }
};

struct CSCallSite {
  const Context* context;
  const ir::Stmt* site;
  const ir::MethodDecl* container;
  const ir::Invoke* invoke() const { return site->as<ir::Invoke>(); }
  std::string repr() const {
    std::string s = siteName(site, container);
    if (context->isEmpty()) return s;
    return context->repr() + ":" + s;
  }
};

// Interning authority for context-qualified entities. One per analysis run;
// the dense CSObj indices it assigns make all points-to sets comparable.
class CSManager {
 public:
  explicit CSManager() = default;
  CSManager(const CSManager&) = delete;
  CSManager& operator=(const CSManager&) = delete;

  // Constant objects always carry the empty heap context.
  const CSObj* csObj(const Context* heapContext, const Obj* obj,
                     const Context* emptyContext);
  CSVar* csVar(const Context* context, const ir::Var* v);
  InstanceFieldPtr* instanceField(const CSObj* base, const ir::FieldDecl* f);
  ArrayIndexPtr* arrayIndex(const CSObj* array);
  StaticFieldPtr* staticField(const ir::FieldDecl* f);
  const CSMethod* csMethod(const Context* context, const ir::MethodDecl* m);
  const CSCallSite* csCallSite(const Context* context, const ir::Stmt* site,
                               const ir::MethodDecl* container);

  CSVar* findCsVar(const Context* context, const ir::Var* v) const;
  const CSObj* objAt(uint32_t index) const { return csObjList_[index]; }
  size_t csObjCount() const { return csObjList_.size(); }
  // All pointers in creation order.
  const std::vector<Pointer*>& pointers() const { return pointerList_; }

 private:
  std::deque<CSObj> csObjStorage_;
  std::vector<const CSObj*> csObjList_;
  std::map<std::pair<const Context*, const Obj*>, const CSObj*> csObjs_;

  std::vector<std::unique_ptr<Pointer>> pointerStorage_;
  std::vector<Pointer*> pointerList_;
  std::map<std::pair<const Context*, const ir::Var*>, CSVar*> csVars_;
  std::map<std::pair<const CSObj*, const ir::FieldDecl*>, InstanceFieldPtr*>
      instanceFields_;
  std::map<const CSObj*, ArrayIndexPtr*> arrayIndexes_;
  std::map<const ir::FieldDecl*, StaticFieldPtr*> staticFields_;

  std::deque<CSMethod> csMethodStorage_;
  std::map<std::pair<const Context*, const ir::MethodDecl*>, const CSMethod*>
      csMethods_;
  std::deque<CSCallSite> csCallSiteStorage_;
  std::map<std::pair<const Context*, const ir::Stmt*>, const CSCallSite*>
      csCallSites_;
};

template <typename F>
void PointsToSet::forEach(F f) const {
  bits_.forEach([&](uint32_t index) { f(manager_->objAt(index)); });
}

}  // namespace spa::pta
