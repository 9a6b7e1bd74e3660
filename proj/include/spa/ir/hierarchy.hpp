// Single entry point for all class-hierarchy queries: subtype checks, method
// dispatch, field resolution, and subclass enumeration.
#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spa/ir/program.hpp"

namespace spa::ir {

class HierarchyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Hierarchy {
 public:
  explicit Hierarchy(const Program& program);

  const Program& program() const { return *program_; }
  const ClassDecl* classByName(std::string_view name) const;

  // Nominal subtyping: reflexive and transitive over classes/interfaces,
  // arrays covariant in reference element types, null below every reference
  // type, primitives only below themselves.
  bool isSubtype(const Type& sub, const Type& sup) const;

  // Reflexive subclass/implements relation between declarations.
  bool isSubclassOf(const ClassDecl& sub, const ClassDecl& sup) const;

  // Nearest non-abstract method matching the reference's name on the
  // receiver's superclass chain; null when no match exists.
  const MethodDecl* tryDispatch(const ClassDecl& receiver,
                                const MethodRef& ref) const;
  const MethodDecl* dispatch(const ClassDecl& receiver,
                             const MethodRef& ref) const;

  // Nearest declaration by name walking up from `className`; searches
  // interfaces breadth-first when the start is an interface. Used for
  // static resolution of invoke statements.
  const MethodDecl* resolveMethod(std::string_view className,
                                  std::string_view methodName) const;

  // Nearest field declaration on the superclass chain.
  std::pair<const ClassDecl*, const FieldDecl*> tryResolveField(
      std::string_view className, std::string_view fieldName) const;
  std::pair<const ClassDecl*, const FieldDecl*> resolveField(
      std::string_view className, std::string_view fieldName) const;

  // All transitive subclasses and implementors, excluding the class itself.
  std::vector<const ClassDecl*> subclassesOf(std::string_view name) const;

 private:
  const Program* program_;
  std::map<const ClassDecl*, std::vector<const ClassDecl*>> directSubs_;
};

}  // namespace spa::ir
