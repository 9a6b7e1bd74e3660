// Constant propagation over the UNDEF / Const / NAC lattice.
#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "spa/dataflow/solver.hpp"

namespace spa::dataflow {

class CPValue {
 public:
  enum class Kind { Undef, Const, NAC };

  CPValue() : kind_(Kind::Undef) {}

  static CPValue undef() { return CPValue(); }
  static CPValue nac() {
    CPValue v;
    v.kind_ = Kind::NAC;
    return v;
  }
  static CPValue intConst(int64_t c) {
    CPValue v;
    v.kind_ = Kind::Const;
    v.isBool_ = false;
    v.value_ = c;
    return v;
  }
  static CPValue boolConst(bool b) {
    CPValue v;
    v.kind_ = Kind::Const;
    v.isBool_ = true;
    v.value_ = b ? 1 : 0;
    return v;
  }

  bool isUndef() const { return kind_ == Kind::Undef; }
  bool isConst() const { return kind_ == Kind::Const; }
  bool isNac() const { return kind_ == Kind::NAC; }
  bool isBoolConst() const { return isConst() && isBool_; }
  int64_t value() const { return value_; }

  // UNDEF below Const(c) below NAC; distinct constants meet to NAC.
  static CPValue meet(const CPValue& a, const CPValue& b) {
    if (a.isNac() || b.isNac()) return nac();
    if (a.isUndef()) return b;
    if (b.isUndef()) return a;
    if (a == b) return a;
    return nac();
  }

  bool operator==(const CPValue& o) const {
    if (kind_ != o.kind_) return false;
    if (kind_ != Kind::Const) return true;
    return isBool_ == o.isBool_ && value_ == o.value_;
  }
  bool operator!=(const CPValue& o) const { return !(*this == o); }

  std::string toString() const {
    if (isUndef()) return "UNDEF";
    if (isNac()) return "NAC";
    if (isBool_) return value_ ? "true" : "false";
    return std::to_string(value_);
  }

 private:
  Kind kind_;
  bool isBool_ = false;
  int64_t value_ = 0;
};

// Var -> CPValue; an absent variable is UNDEF, and UNDEF is never stored.
class CPFact {
 public:
  CPValue get(const ir::Var* v) const {
    auto it = values_.find(v);
    return it == values_.end() ? CPValue::undef() : it->second;
  }

  // Raises the binding by meet; reports an actual change.
  bool update(const ir::Var* v, const CPValue& value) {
    CPValue met = CPValue::meet(get(v), value);
    if (met.isUndef()) return false;
    auto it = values_.find(v);
    if (it != values_.end() && it->second == met) return false;
    values_[v] = met;
    return true;
  }

  // Overwrites a binding outside the meet discipline; edge refinement only.
  void forceBinding(const ir::Var* v, const CPValue& value) {
    values_[v] = value;
  }

  bool operator==(const CPFact& o) const { return values_ == o.values_; }
  std::string toString() const;

  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

 private:
  struct VarLess {
    bool operator()(const ir::Var* a, const ir::Var* b) const {
      return a->index < b->index;
    }
  };
  std::map<const ir::Var*, CPValue, VarLess> values_;
};

class ConstantPropagation {
 public:
  using Fact = CPFact;

  // edgeRefine enables the IF_TRUE transfer: on `if x == y`, a constant on
  // one side pins the other along the true edge.
  explicit ConstantPropagation(bool edgeRefine = false)
      : edgeRefine_(edgeRefine) {}

  bool isForward() const { return true; }
  std::string name() const { return "constprop"; }
  bool needsEdgeTransfer() const { return edgeRefine_; }

  // Parameters and the receiver are NAC at the boundary.
  CPFact newBoundaryFact(const cfg::CFG& cfg) const;
  CPFact newInitialFact() const { return CPFact(); }
  bool meetInto(const CPFact& source, CPFact& target) const;
  bool transferNode(const ir::Stmt& s, const CPFact& in, CPFact& out) const;
  CPFact transferEdge(const cfg::Edge& e, const CPFact& out) const;

  static CPValue evalBinary(ir::BinaryOp op, const CPValue& a,
                            const CPValue& b);
  static CPValue evalUnary(ir::UnaryOp op, const CPValue& a);

 private:
  bool edgeRefine_;
};

// Plain-text dump, one line per statement: index | stmt | IN | OUT.
std::string dumpResult(const cfg::CFG& cfg,
                       const DataflowResult<CPFact>& result);

}  // namespace spa::dataflow
