#include <algorithm>

#include "spa/ir/hierarchy.hpp"
#include "spa/ir/program.hpp"

namespace spa::ir {

std::string Literal::toString() const {
  switch (kind_) {
    case Kind::Int: return std::to_string(int_);
    case Kind::Boolean: return bool_ ? "true" : "false";
    case Kind::Null: return "null";
    case Kind::String: {
      std::string out = "\"";
      for (char c : str_) {
        switch (c) {
          case '"': out += "\\\""; break;
          case '\\': out += "\\\\"; break;
          case '\n': out += "\\n"; break;
          case '\t': out += "\\t"; break;
          default: out += c;
        }
      }
      out += '"';
      return out;
    }
  }
  return "?";
}

std::string Var::qualifiedName() const {
  return method ? method->signature() + "/" + name : name;
}

std::string FieldDecl::qualifiedName() const {
  return owner->name() + "." + name;
}

std::string toString(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Rem: return "%";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::And: return "&&";
    case BinaryOp::Or: return "||";
  }
  return "?";
}

std::string toString(UnaryOp op) {
  return op == UnaryOp::Neg ? "-" : "!";
}

std::string toString(CondOp op) {
  switch (op) {
    case CondOp::Eq: return "==";
    case CondOp::Ne: return "!=";
    case CondOp::Lt: return "<";
    case CondOp::Le: return "<=";
    case CondOp::Gt: return ">";
    case CondOp::Ge: return ">=";
  }
  return "?";
}

std::string toString(InvokeKind k) {
  switch (k) {
    case InvokeKind::Static: return "invokestatic";
    case InvokeKind::Virtual: return "invokevirtual";
    case InvokeKind::Special: return "invokespecial";
  }
  return "?";
}

const Var* defVar(const Stmt& s) {
  return std::visit(
      [](const auto& v) -> const Var* {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, New> || std::is_same_v<T, AssignLiteral> ||
                      std::is_same_v<T, Copy> || std::is_same_v<T, LoadField> ||
                      std::is_same_v<T, LoadArray> || std::is_same_v<T, Binary> ||
                      std::is_same_v<T, Unary> || std::is_same_v<T, Cast> ||
                      std::is_same_v<T, Catch>) {
          return v.lhs;
        } else if constexpr (std::is_same_v<T, Invoke>) {
          return v.result;
        } else {
          return nullptr;
        }
      },
      s.data);
}

std::vector<const Var*> useVars(const Stmt& s) {
  std::vector<const Var*> out;
  auto add = [&out](const Var* v) {
    if (v) out.push_back(v);
  };
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Copy>) {
          add(v.rhs);
        } else if constexpr (std::is_same_v<T, LoadField>) {
          add(v.base);
        } else if constexpr (std::is_same_v<T, StoreField>) {
          add(v.base), add(v.rhs);
        } else if constexpr (std::is_same_v<T, LoadArray>) {
          add(v.base);
        } else if constexpr (std::is_same_v<T, StoreArray>) {
          add(v.base), add(v.rhs);
        } else if constexpr (std::is_same_v<T, Binary>) {
          add(v.op1), add(v.op2);
        } else if constexpr (std::is_same_v<T, Unary>) {
          add(v.operand);
        } else if constexpr (std::is_same_v<T, Cast>) {
          add(v.rhs);
        } else if constexpr (std::is_same_v<T, Invoke>) {
          add(v.base);
          for (const Var* a : v.args) add(a);
        } else if constexpr (std::is_same_v<T, Return>) {
          add(v.value);
        } else if constexpr (std::is_same_v<T, If>) {
          add(v.op1), add(v.op2);
        } else if constexpr (std::is_same_v<T, Switch>) {
          add(v.key);
        } else if constexpr (std::is_same_v<T, Throw>) {
          add(v.var);
        }
      },
      s.data);
  return out;
}

std::string MethodDecl::signature() const {
  std::string sig = owner_->name() + "." + name_ + "(";
  for (size_t i = 0; i < paramTypes_.size(); ++i) {
    if (i) sig += ",";
    sig += paramTypes_[i].toString();
  }
  sig += ")";
  return sig;
}

std::vector<MethodBody::Handler> MethodBody::handlersFor(int stmtIndex) const {
  std::vector<Handler> covering;
  for (const Handler& h : handlers_) {
    if (stmtIndex >= h.tryStart && stmtIndex < h.tryEnd) covering.push_back(h);
  }
  std::stable_sort(covering.begin(), covering.end(),
                   [](const Handler& a, const Handler& b) {
                     return (a.tryEnd - a.tryStart) < (b.tryEnd - b.tryStart);
                   });
  return covering;
}

const FieldDecl* ClassDecl::findField(std::string_view name) const {
  for (const FieldDecl& f : fields_) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

const MethodDecl* ClassDecl::findMethod(std::string_view name) const {
  for (const auto& m : methods_) {
    if (m->name() == name) return m.get();
  }
  return nullptr;
}

Program::Program() : ResultHolder("program") {}
Program::~Program() = default;

const ClassDecl* Program::classByName(std::string_view name) const {
  auto it = classByName_.find(name);
  return it == classByName_.end() ? nullptr : it->second;
}

}  // namespace spa::ir
