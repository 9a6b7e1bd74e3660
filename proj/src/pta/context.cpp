#include "spa/pta/context.hpp"

#include "spa/pta/pointer.hpp"

namespace spa::pta {

const Context* CallSiteSelector::selectMethodContext(
    const CSMethod* caller, const ir::Stmt& callSite, const ir::MethodDecl&,
    const CSObj*) {
  return contexts_->append(
      caller->context, ContextElem::callSite(&callSite, caller->method),
      kMethod_);
}

const Context* CallSiteSelector::selectHeapContext(const CSMethod* method,
                                                   const ir::Stmt&) {
  return contexts_->truncateLast(method->context, kHeap_);
}

const Context* ObjectSelector::selectMethodContext(const CSMethod* caller,
                                                   const ir::Stmt&,
                                                   const ir::MethodDecl&,
                                                   const CSObj* receiver) {
  if (!receiver) return caller->context;  // static call: keep caller context
  return contexts_->append(receiver->heapContext(),
                           ContextElem::object(receiver->obj()), kMethod_);
}

const Context* ObjectSelector::selectHeapContext(const CSMethod* method,
                                                 const ir::Stmt&) {
  return contexts_->truncateLast(method->context, kHeap_);
}

namespace {

// The type element for an object: the class containing its allocation site,
// falling back to the object's own type for objects without one.
ir::Type allocatorType(const Obj* obj) {
  if (obj->container()) return ir::Type::classType(obj->container()->owner().name());
  return obj->type();
}

}  // namespace

const Context* TypeSelector::selectMethodContext(const CSMethod* caller,
                                                 const ir::Stmt&,
                                                 const ir::MethodDecl&,
                                                 const CSObj* receiver) {
  if (!receiver) return caller->context;
  return contexts_->append(receiver->heapContext(),
                           ContextElem::type(allocatorType(receiver->obj())),
                           kMethod_);
}

const Context* TypeSelector::selectHeapContext(const CSMethod* method,
                                               const ir::Stmt&) {
  return contexts_->truncateLast(method->context, kHeap_);
}

}  // namespace spa::pta
