// Three-address statements. Every statement kind is its own concrete struct
// exposing exactly the operands that exist for it; consumers visit the
// variant and never downcast through an abstract expression type.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "spa/ir/literal.hpp"
#include "spa/ir/type.hpp"

namespace spa::ir {

class ClassDecl;
class MethodDecl;
class MethodBody;
struct FieldDecl;

// A local variable, parameter, or the receiver of an instance method.
// Owned by its MethodBody; identity is the pointer.
struct Var {
  std::string name;
  Type type;
  int index = 0;                        // position within the owning body
  const MethodDecl* method = nullptr;   // owning method

  std::string qualifiedName() const;    // "C.m/name"
};

struct FieldDecl {
  std::string name;
  Type type;
  bool isStatic = false;
  const ClassDecl* owner = nullptr;

  std::string qualifiedName() const;    // "C.f"
};

// A textual field reference as written; `resolved` is the nearest declaration
// on the superclass chain, filled in at parse time.
struct FieldRef {
  std::string className;
  std::string fieldName;
  bool isStatic = false;
  const FieldDecl* resolved = nullptr;
};

// A textual method reference; `resolved` is the statically found declaration
// (virtual calls re-dispatch on the receiver's runtime type).
struct MethodRef {
  std::string className;
  std::string methodName;
  const MethodDecl* resolved = nullptr;
};

enum class BinaryOp { Add, Sub, Mul, Div, Rem, Eq, Ne, Lt, Le, Gt, Ge, And, Or };
enum class UnaryOp { Neg, Not };
enum class CondOp { Eq, Ne, Lt, Le, Gt, Ge };
enum class InvokeKind { Static, Virtual, Special };

std::string toString(BinaryOp op);
std::string toString(UnaryOp op);
std::string toString(CondOp op);
std::string toString(InvokeKind k);

struct New {
  const Var* lhs;
  Type type;
  int allocId;          // globally unique per program, parse order
};

struct AssignLiteral {
  const Var* lhs;
  Literal value;
};

struct Copy {
  const Var* lhs;
  const Var* rhs;
};

struct LoadField {
  const Var* lhs;
  const Var* base;      // null for static loads
  FieldRef field;
};

struct StoreField {
  const Var* base;      // null for static stores
  FieldRef field;
  const Var* rhs;
};

// Arrays are index-insensitive: one element slot per array object.
struct LoadArray {
  const Var* lhs;
  const Var* base;
};

struct StoreArray {
  const Var* base;
  const Var* rhs;
};

struct Binary {
  const Var* lhs;
  BinaryOp op;
  const Var* op1;
  const Var* op2;
};

struct Unary {
  const Var* lhs;
  UnaryOp op;
  const Var* operand;
};

struct Cast {
  const Var* lhs;
  Type target;
  const Var* rhs;
};

struct Invoke {
  InvokeKind kind;
  const Var* result;    // null when the call discards its value
  const Var* base;      // null for static calls
  MethodRef method;
  std::vector<const Var*> args;
};

struct Return {
  const Var* value;     // null for void returns
};

struct If {
  CondOp op;
  const Var* op1;
  const Var* op2;
  int target;           // statement index
};

struct Goto {
  int target;
};

struct Switch {
  const Var* key;
  std::vector<std::pair<int64_t, int>> cases;  // (case value, target index)
  int defaultTarget;
};

struct Throw {
  const Var* var;
};

// Handler entry point; the catch table routes matching exceptions here.
struct Catch {
  const Var* lhs;
};

struct Nop {};

using StmtData =
    std::variant<New, AssignLiteral, Copy, LoadField, StoreField, LoadArray,
                 StoreArray, Binary, Unary, Cast, Invoke, Return, If, Goto,
                 Switch, Throw, Catch, Nop>;

struct Stmt {
  int index = 0;
  int line = 0;
  StmtData data;

  template <typename T>
  const T* as() const {
    return std::get_if<T>(&data);
  }
  template <typename T>
  bool is() const {
    return std::holds_alternative<T>(data);
  }
};

// The variable a statement defines, or null.
const Var* defVar(const Stmt& s);
// The variables a statement reads, in operand order.
std::vector<const Var*> useVars(const Stmt& s);

}  // namespace spa::ir
