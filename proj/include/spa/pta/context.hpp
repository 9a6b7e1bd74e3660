// Contexts are bounded sequences of call sites, objects, or types; the
// selector strategies below realize k-call-site, k-object, and k-type
// sensitivity with independent limits for methods and heap objects.
#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "spa/pta/object.hpp"

namespace spa::pta {

struct CSMethod;
class CSObj;

struct ContextElem {
  enum class Kind { CallSite, Object, Type };

  static ContextElem callSite(const ir::Stmt* site,
                              const ir::MethodDecl* container) {
    ContextElem e;
    e.kind = Kind::CallSite;
    e.site = site;
    e.siteMethod = container;
    return e;
  }
  static ContextElem object(const Obj* obj) {
    ContextElem e;
    e.kind = Kind::Object;
    e.obj = obj;
    return e;
  }
  static ContextElem type(ir::Type t) {
    ContextElem e;
    e.kind = Kind::Type;
    e.typeElem = std::move(t);
    return e;
  }

  std::string repr() const {
    switch (kind) {
      case Kind::CallSite: return siteName(site, siteMethod);
      case Kind::Object: return obj->name();
      case Kind::Type: return "type:" + typeElem.toString();
    }
    return "?";
  }

  Kind kind = Kind::CallSite;
  const ir::Stmt* site = nullptr;
  const ir::MethodDecl* siteMethod = nullptr;
  const Obj* obj = nullptr;
  ir::Type typeElem;
};

class Context {
 public:
  const std::vector<ContextElem>& elems() const { return elems_; }
  bool isEmpty() const { return elems_.empty(); }
  size_t length() const { return elems_.size(); }
  const std::string& repr() const { return repr_; }

 private:
  friend class ContextManager;
  std::vector<ContextElem> elems_;
  std::string repr_;
};

class ContextManager {
 public:
  ContextManager() { empty_ = intern({}); }

  const Context* empty() const { return empty_; }

  const Context* intern(std::vector<ContextElem> elems) {
    std::string repr = "[";
    for (size_t i = 0; i < elems.size(); ++i) {
      if (i) repr += ",";
      repr += elems[i].repr();
    }
    repr += "]";
    auto it = byRepr_.find(repr);
    if (it != byRepr_.end()) return it->second.get();
    auto ctx = std::unique_ptr<Context>(new Context());
    ctx->elems_ = std::move(elems);
    ctx->repr_ = repr;
    Context* ptr = ctx.get();
    byRepr_[ptr->repr_] = std::move(ctx);
    return ptr;
  }

  // base ++ [elem], keeping the last `limit` elements.
  const Context* append(const Context* base, ContextElem elem, size_t limit) {
    std::vector<ContextElem> elems = base->elems();
    elems.push_back(std::move(elem));
    if (elems.size() > limit)
      elems.erase(elems.begin(), elems.end() - limit);
    if (limit == 0) elems.clear();
    return intern(std::move(elems));
  }

  // The last `limit` elements of base.
  const Context* truncateLast(const Context* base, size_t limit) {
    if (base->length() <= limit) return const_cast<const Context*>(base);
    std::vector<ContextElem> elems(base->elems().end() - limit,
                                   base->elems().end());
    return intern(std::move(elems));
  }

 private:
  std::map<std::string, std::unique_ptr<Context>> byRepr_;
  const Context* empty_ = nullptr;
};

// Strategy interface: context for a resolved call edge's callee, and heap
// context for an allocation in a context-qualified method.
class ContextSelector {
 public:
  virtual ~ContextSelector() = default;

  // Called once by the solver before use.
  void bind(ContextManager& manager) { contexts_ = &manager; }

  // `receiver` is null for static calls.
  virtual const Context* selectMethodContext(const CSMethod* caller,
                                             const ir::Stmt& callSite,
                                             const ir::MethodDecl& callee,
                                             const CSObj* receiver) = 0;
  virtual const Context* selectHeapContext(const CSMethod* method,
                                           const ir::Stmt& allocSite) = 0;
  virtual std::string name() const = 0;

 protected:
  ContextManager* contexts_ = nullptr;
};

class InsensitiveSelector final : public ContextSelector {
 public:
  const Context* selectMethodContext(const CSMethod*, const ir::Stmt&,
                                     const ir::MethodDecl&,
                                     const CSObj*) override {
    return contexts_->empty();
  }
  const Context* selectHeapContext(const CSMethod*, const ir::Stmt&) override {
    return contexts_->empty();
  }
  std::string name() const override { return "ci"; }
};

class CallSiteSelector final : public ContextSelector {
 public:
  CallSiteSelector(size_t kMethod, size_t kHeap)
      : kMethod_(kMethod), kHeap_(kHeap) {}

  const Context* selectMethodContext(const CSMethod* caller,
                                     const ir::Stmt& callSite,
                                     const ir::MethodDecl& callee,
                                     const CSObj* receiver) override;
  const Context* selectHeapContext(const CSMethod* method,
                                   const ir::Stmt& allocSite) override;
  std::string name() const override {
    return std::to_string(kMethod_) + "-call";
  }

 private:
  size_t kMethod_;
  size_t kHeap_;
};

// Object sensitivity: receiver's heap context extended with the receiver
// object. Static calls keep the caller's context unchanged.
class ObjectSelector final : public ContextSelector {
 public:
  ObjectSelector(size_t kMethod, size_t kHeap)
      : kMethod_(kMethod), kHeap_(kHeap) {}

  const Context* selectMethodContext(const CSMethod* caller,
                                     const ir::Stmt& callSite,
                                     const ir::MethodDecl& callee,
                                     const CSObj* receiver) override;
  const Context* selectHeapContext(const CSMethod* method,
                                   const ir::Stmt& allocSite) override;
  std::string name() const override { return std::to_string(kMethod_) + "-obj"; }

 private:
  size_t kMethod_;
  size_t kHeap_;
};

// Type sensitivity: object sensitivity with each object replaced by the
// class containing its allocation site.
class TypeSelector final : public ContextSelector {
 public:
  TypeSelector(size_t kMethod, size_t kHeap)
      : kMethod_(kMethod), kHeap_(kHeap) {}

  const Context* selectMethodContext(const CSMethod* caller,
                                     const ir::Stmt& callSite,
                                     const ir::MethodDecl& callee,
                                     const CSObj* receiver) override;
  const Context* selectHeapContext(const CSMethod* method,
                                   const ir::Stmt& allocSite) override;
  std::string name() const override {
    return std::to_string(kMethod_) + "-type";
  }

 private:
  size_t kMethod_;
  size_t kHeap_;
};

}  // namespace spa::pta
