// Constant values appearing in IR text: int, boolean, null and string.
#pragma once

#include <cassert>
#include <cstdint>
#include <string>

#include "spa/ir/type.hpp"

namespace spa::ir {

class Literal {
 public:
  enum class Kind { Int, Boolean, Null, String };

  Literal() : kind_(Kind::Null) {}

  static Literal intValue(int64_t v) {
    Literal l(Kind::Int);
    l.int_ = v;
    return l;
  }
  static Literal booleanValue(bool v) {
    Literal l(Kind::Boolean);
    l.bool_ = v;
    return l;
  }
  static Literal nullValue() { return Literal(Kind::Null); }
  static Literal stringValue(std::string v) {
    Literal l(Kind::String);
    l.str_ = std::move(v);
    return l;
  }

  Kind kind() const { return kind_; }
  bool isInt() const { return kind_ == Kind::Int; }
  bool isBoolean() const { return kind_ == Kind::Boolean; }
  bool isNull() const { return kind_ == Kind::Null; }
  bool isString() const { return kind_ == Kind::String; }

  int64_t asInt() const {
    assert(isInt());
    return int_;
  }
  bool asBoolean() const {
    assert(isBoolean());
    return bool_;
  }
  const std::string& asString() const {
    assert(isString());
    return str_;
  }

  Type type() const {
    switch (kind_) {
      case Kind::Int: return Type::intType();
      case Kind::Boolean: return Type::booleanType();
      case Kind::Null: return Type::nullType();
      case Kind::String: return Type::classType(builtin::kString);
    }
    return Type::voidType();
  }

  // Source form, with quoting and escapes for strings.
  std::string toString() const;

  bool operator==(const Literal& o) const {
    if (kind_ != o.kind_) return false;
    switch (kind_) {
      case Kind::Int: return int_ == o.int_;
      case Kind::Boolean: return bool_ == o.bool_;
      case Kind::Null: return true;
      case Kind::String: return str_ == o.str_;
    }
    return false;
  }
  bool operator!=(const Literal& o) const { return !(*this == o); }

 private:
  explicit Literal(Kind k) : kind_(k) {}

  Kind kind_;
  int64_t int_ = 0;
  bool bool_ = false;
  std::string str_;
};

}  // namespace spa::ir
