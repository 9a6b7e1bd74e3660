// Program types: primitives, named class/interface types, arrays, and the
// null/void pseudo-types. Plain values with structural equality; no string
// parsing is ever needed to tell the kinds apart.
#pragma once

#include <cassert>
#include <memory>
#include <string>

namespace spa::ir {

class Type {
 public:
  enum class Kind { Int, Boolean, Class, Array, Null, Void };

  Type() : kind_(Kind::Void) {}

  static Type intType() { return Type(Kind::Int); }
  static Type booleanType() { return Type(Kind::Boolean); }
  static Type nullType() { return Type(Kind::Null); }
  static Type voidType() { return Type(Kind::Void); }

  static Type classType(std::string name) {
    Type t(Kind::Class);
    t.name_ = std::move(name);
    return t;
  }

  static Type arrayType(Type element) {
    assert(!element.isVoid());
    Type t(Kind::Array);
    t.element_ = std::make_shared<const Type>(std::move(element));
    return t;
  }

  Kind kind() const { return kind_; }
  bool isInt() const { return kind_ == Kind::Int; }
  bool isBoolean() const { return kind_ == Kind::Boolean; }
  bool isPrimitive() const { return isInt() || isBoolean(); }
  bool isClass() const { return kind_ == Kind::Class; }
  bool isArray() const { return kind_ == Kind::Array; }
  bool isNull() const { return kind_ == Kind::Null; }
  bool isVoid() const { return kind_ == Kind::Void; }
  // Class, array and null types; the types whose values live on the heap.
  bool isReference() const { return isClass() || isArray() || isNull(); }

  const std::string& className() const {
    assert(isClass());
    return name_;
  }

  const Type& element() const {
    assert(isArray());
    return *element_;
  }

  std::string toString() const {
    switch (kind_) {
      case Kind::Int: return "int";
      case Kind::Boolean: return "boolean";
      case Kind::Class: return name_;
      case Kind::Array: return element_->toString() + "[]";
      case Kind::Null: return "null-type";
      case Kind::Void: return "void";
    }
    return "?";
  }

  bool operator==(const Type& o) const {
    if (kind_ != o.kind_) return false;
    if (kind_ == Kind::Class) return name_ == o.name_;
    if (kind_ == Kind::Array) return *element_ == *o.element_;
    return true;
  }
  bool operator!=(const Type& o) const { return !(*this == o); }

 private:
  explicit Type(Kind k) : kind_(k) {}

  Kind kind_;
  std::string name_;
  std::shared_ptr<const Type> element_;
};

// Names of the built-in core classes every program gets for free.
namespace builtin {
inline constexpr const char* kObject = "Object";
inline constexpr const char* kString = "String";
inline constexpr const char* kThrowable = "Throwable";
inline constexpr const char* kArithmeticException = "ArithmeticException";
inline constexpr const char* kIndexOutOfBoundsException = "IndexOutOfBoundsException";
inline constexpr const char* kClassCastException = "ClassCastException";
inline constexpr const char* kNullPointerException = "NullPointerException";
}  // namespace builtin

}  // namespace spa::ir
