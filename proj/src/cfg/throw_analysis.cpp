#include "spa/cfg/throw_analysis.hpp"

namespace spa::cfg {

ThrowResult throwAnalysis(const ir::MethodBody& body) {
  ThrowResult result;
  size_t n = body.stmts().size();
  result.explicitTypes.resize(n);
  result.implicitTypes.resize(n);

  auto cls = [](const char* name) { return ir::Type::classType(name); };

  for (const ir::Stmt& s : body.stmts()) {
    auto& implicit = result.implicitTypes[s.index];
    if (const auto* t = s.as<ir::Throw>()) {
      result.explicitTypes[s.index].push_back(t->var->type);
    } else if (const auto* b = s.as<ir::Binary>()) {
      if (b->op == ir::BinaryOp::Div || b->op == ir::BinaryOp::Rem)
        implicit.push_back(cls(ir::builtin::kArithmeticException));
    } else if (s.is<ir::LoadArray>() || s.is<ir::StoreArray>()) {
      implicit.push_back(cls(ir::builtin::kIndexOutOfBoundsException));
    } else if (s.is<ir::Cast>()) {
      implicit.push_back(cls(ir::builtin::kClassCastException));
    } else if (const auto* l = s.as<ir::LoadField>()) {
      if (l->base) implicit.push_back(cls(ir::builtin::kNullPointerException));
    } else if (const auto* st = s.as<ir::StoreField>()) {
      if (st->base) implicit.push_back(cls(ir::builtin::kNullPointerException));
    } else if (const auto* inv = s.as<ir::Invoke>()) {
      if (inv->base)
        implicit.push_back(cls(ir::builtin::kNullPointerException));
    }
  }
  return result;
}

}  // namespace spa::cfg
