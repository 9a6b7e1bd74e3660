#include "spa/ir/printer.hpp"

#include <set>
#include <sstream>

namespace spa::ir {

namespace {

std::string label(int index) { return "L" + std::to_string(index); }

std::string fieldAccess(const Var* base, const FieldRef& ref) {
  return (base ? base->name : ref.className) + "." + ref.fieldName;
}

}  // namespace

std::string stmtToString(const Stmt& s) {
  std::ostringstream out;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, New>) {
          out << v.lhs->name << " = new " << v.type.toString();
        } else if constexpr (std::is_same_v<T, AssignLiteral>) {
          out << v.lhs->name << " = " << v.value.toString();
        } else if constexpr (std::is_same_v<T, Copy>) {
          out << v.lhs->name << " = " << v.rhs->name;
        } else if constexpr (std::is_same_v<T, LoadField>) {
          out << v.lhs->name << " = " << fieldAccess(v.base, v.field);
        } else if constexpr (std::is_same_v<T, StoreField>) {
          out << fieldAccess(v.base, v.field) << " = " << v.rhs->name;
        } else if constexpr (std::is_same_v<T, LoadArray>) {
          out << v.lhs->name << " = " << v.base->name << "[*]";
        } else if constexpr (std::is_same_v<T, StoreArray>) {
          out << v.base->name << "[*] = " << v.rhs->name;
        } else if constexpr (std::is_same_v<T, Binary>) {
          out << v.lhs->name << " = " << v.op1->name << " " << toString(v.op)
              << " " << v.op2->name;
        } else if constexpr (std::is_same_v<T, Unary>) {
          out << v.lhs->name << " = " << toString(v.op) << v.operand->name;
        } else if constexpr (std::is_same_v<T, Cast>) {
          out << v.lhs->name << " = (" << v.target.toString() << ") "
              << v.rhs->name;
        } else if constexpr (std::is_same_v<T, Invoke>) {
          if (v.result) out << v.result->name << " = ";
          out << toString(v.kind) << " "
              << (v.base ? v.base->name : v.method.className) << "."
              << v.method.methodName << "(";
          for (size_t i = 0; i < v.args.size(); ++i) {
            if (i) out << ", ";
            out << v.args[i]->name;
          }
          out << ")";
        } else if constexpr (std::is_same_v<T, Return>) {
          out << "return";
          if (v.value) out << " " << v.value->name;
        } else if constexpr (std::is_same_v<T, If>) {
          out << "if " << v.op1->name << " " << toString(v.op) << " "
              << v.op2->name << " goto " << label(v.target);
        } else if constexpr (std::is_same_v<T, Goto>) {
          out << "goto " << label(v.target);
        } else if constexpr (std::is_same_v<T, Switch>) {
          out << "switch " << v.key->name << " { ";
          for (const auto& [value, target] : v.cases)
            out << "case " << value << ": " << label(target) << "; ";
          out << "default: " << label(v.defaultTarget) << "; }";
        } else if constexpr (std::is_same_v<T, Throw>) {
          out << "throw " << v.var->name;
        } else if constexpr (std::is_same_v<T, Catch>) {
          out << v.lhs->name << " = @catch";
        } else if constexpr (std::is_same_v<T, Nop>) {
          out << "nop";
        }
      },
      s.data);
  return out.str();
}

std::string printMethod(const MethodDecl& m) {
  std::ostringstream out;
  out << "  ";
  if (m.isStatic()) out << "static ";
  out << m.returnType().toString() << " " << m.name() << "(";
  for (size_t i = 0; i < m.paramTypes().size(); ++i) {
    if (i) out << ", ";
    out << m.paramTypes()[i].toString() << " " << m.paramNames()[i];
  }
  out << ")";
  const MethodBody* body = m.body();
  if (!body) {
    out << ";\n";
    return out.str();
  }
  out << " {\n";
  for (const Var* v : body->vars()) {
    if (v == body->thisVar()) continue;
    bool isParam = false;
    for (const Var* p : body->params()) isParam |= (p == v);
    if (isParam) continue;
    out << "    " << v->type.toString() << " " << v->name << ";\n";
  }
  // Labels are re-generated for every jump or catch-table target.
  std::set<int> targets;
  for (const Stmt& s : body->stmts()) {
    if (const auto* i = s.as<If>()) targets.insert(i->target);
    if (const auto* g = s.as<Goto>()) targets.insert(g->target);
    if (const auto* sw = s.as<Switch>()) {
      for (const auto& [value, t] : sw->cases) targets.insert(t);
      targets.insert(sw->defaultTarget);
    }
  }
  for (const MethodBody::Handler& h : body->exceptionTable()) {
    targets.insert(h.tryStart);
    targets.insert(h.tryEnd);
    targets.insert(h.handlerIndex);
  }
  for (const Stmt& s : body->stmts()) {
    out << "    ";
    if (targets.count(s.index)) out << label(s.index) << ": ";
    out << stmtToString(s) << ";\n";
  }
  for (const MethodBody::Handler& h : body->exceptionTable()) {
    out << "    catch(" << h.catchType.toString() << ", " << label(h.tryStart)
        << ", " << label(h.tryEnd) << ", " << label(h.handlerIndex) << ");\n";
  }
  out << "  }\n";
  return out.str();
}

std::string printProgram(const Program& p) {
  std::ostringstream out;
  for (const ClassDecl* c : p.classes()) {
    if (c->isBuiltin()) continue;
    out << (c->isInterface() ? "interface " : "class ") << c->name();
    if (!c->isInterface() && c->superclass() &&
        c->superclass()->name() != builtin::kObject) {
      out << " extends " << c->superclass()->name();
    }
    if (!c->interfaces().empty()) {
      out << (c->isInterface() ? " extends " : " implements ");
      for (size_t i = 0; i < c->interfaces().size(); ++i) {
        if (i) out << ", ";
        out << c->interfaces()[i]->name();
      }
    }
    out << " {\n";
    for (const FieldDecl& f : c->fields()) {
      out << "  " << (f.isStatic ? "static " : "") << f.type.toString() << " "
          << f.name << ";\n";
    }
    for (const auto& m : c->methods()) out << printMethod(*m);
    out << "}\n";
  }
  return out.str();
}

}  // namespace spa::ir
