#include "spa/dataflow/constprop.hpp"

#include <sstream>

#include "spa/ir/printer.hpp"

namespace spa::dataflow {

CPFact ConstantPropagation::newBoundaryFact(const cfg::CFG& cfg) const {
  CPFact fact;
  const ir::MethodBody& body = cfg.body();
  if (body.thisVar()) fact.update(body.thisVar(), CPValue::nac());
  for (const ir::Var* p : body.params()) fact.update(p, CPValue::nac());
  return fact;
}

bool ConstantPropagation::meetInto(const CPFact& source, CPFact& target) const {
  bool changed = false;
  for (const auto& [var, value] : source) changed |= target.update(var, value);
  return changed;
}

CPValue ConstantPropagation::evalBinary(ir::BinaryOp op, const CPValue& a,
                                        const CPValue& b) {
  if (a.isNac() || b.isNac()) return CPValue::nac();
  if (a.isUndef() || b.isUndef()) return CPValue::undef();
  int64_t x = a.value();
  int64_t y = b.value();
  switch (op) {
    case ir::BinaryOp::Add: return CPValue::intConst(x + y);
    case ir::BinaryOp::Sub: return CPValue::intConst(x - y);
    case ir::BinaryOp::Mul: return CPValue::intConst(x * y);
    case ir::BinaryOp::Div:
      // Division by a constant zero is an erroneous path.
      return y == 0 ? CPValue::undef() : CPValue::intConst(x / y);
    case ir::BinaryOp::Rem:
      return y == 0 ? CPValue::undef() : CPValue::intConst(x % y);
    case ir::BinaryOp::Eq: return CPValue::boolConst(x == y);
    case ir::BinaryOp::Ne: return CPValue::boolConst(x != y);
    case ir::BinaryOp::Lt: return CPValue::boolConst(x < y);
    case ir::BinaryOp::Le: return CPValue::boolConst(x <= y);
    case ir::BinaryOp::Gt: return CPValue::boolConst(x > y);
    case ir::BinaryOp::Ge: return CPValue::boolConst(x >= y);
    case ir::BinaryOp::And: return CPValue::boolConst(x && y);
    case ir::BinaryOp::Or: return CPValue::boolConst(x || y);
  }
  return CPValue::nac();
}

CPValue ConstantPropagation::evalUnary(ir::UnaryOp op, const CPValue& a) {
  if (a.isNac()) return CPValue::nac();
  if (a.isUndef()) return CPValue::undef();
  if (op == ir::UnaryOp::Neg) return CPValue::intConst(-a.value());
  return CPValue::boolConst(a.value() == 0);
}

bool ConstantPropagation::transferNode(const ir::Stmt& s, const CPFact& in,
                                       CPFact& out) const {
  const ir::Var* def = ir::defVar(s);
  bool changed = false;
  for (const auto& [var, value] : in) {
    if (var != def) changed |= out.update(var, value);
  }
  if (!def) return changed;

  CPValue value = CPValue::nac();
  if (const auto* lit = s.as<ir::AssignLiteral>()) {
    if (lit->value.isInt()) {
      value = CPValue::intConst(lit->value.asInt());
    } else if (lit->value.isBoolean()) {
      value = CPValue::boolConst(lit->value.asBoolean());
    }
  } else if (const auto* cp = s.as<ir::Copy>()) {
    value = in.get(cp->rhs);
  } else if (const auto* bin = s.as<ir::Binary>()) {
    value = evalBinary(bin->op, in.get(bin->op1), in.get(bin->op2));
  } else if (const auto* un = s.as<ir::Unary>()) {
    value = evalUnary(un->op, in.get(un->operand));
  }
  changed |= out.update(def, value);
  return changed;
}

CPFact ConstantPropagation::transferEdge(const cfg::Edge& e,
                                         const CPFact& out) const {
  if (e.kind != cfg::EdgeKind::IfTrue || !e.sourceStmt) return out;
  const auto* branch = e.sourceStmt->as<ir::If>();
  if (!branch || branch->op != ir::CondOp::Eq) return out;
  // On the true edge of `if x == y`, a constant on either side pins the
  // other side to the same constant.
  CPValue a = out.get(branch->op1);
  CPValue b = out.get(branch->op2);
  CPFact refined = out;
  if (a.isConst() && !b.isConst()) {
    refined.forceBinding(branch->op2, a);
  } else if (b.isConst() && !a.isConst()) {
    refined.forceBinding(branch->op1, b);
  }
  return refined;
}

std::string CPFact::toString() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [var, value] : values_) {
    if (!first) out += ", ";
    first = false;
    out += var->name + "=" + value.toString();
  }
  return out + "}";
}

std::string dumpResult(const cfg::CFG& cfg,
                       const DataflowResult<CPFact>& result) {
  std::ostringstream out;
  for (const ir::Stmt& s : cfg.body().stmts()) {
    out << s.index << " | " << ir::stmtToString(s)
        << " | IN: " << result.inFactOf(s).toString()
        << " | OUT: " << result.outFactOf(s).toString() << "\n";
  }
  return out.str();
}

}  // namespace spa::dataflow
