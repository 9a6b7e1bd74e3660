#include "spa/cfg/cfg.hpp"

#include <sstream>

#include "spa/ir/printer.hpp"

namespace spa::cfg {

std::string toString(EdgeKind k) {
  switch (k) {
    case EdgeKind::Entry: return "ENTRY";
    case EdgeKind::FallThrough: return "FALL_THROUGH";
    case EdgeKind::Goto: return "GOTO";
    case EdgeKind::IfTrue: return "IF_TRUE";
    case EdgeKind::IfFalse: return "IF_FALSE";
    case EdgeKind::SwitchCase: return "SWITCH_CASE";
    case EdgeKind::SwitchDefault: return "SWITCH_DEFAULT";
    case EdgeKind::CaughtException: return "CAUGHT_EXCEPTION";
    case EdgeKind::UncaughtException: return "UNCAUGHT_EXCEPTION";
    case EdgeKind::Return: return "RETURN";
  }
  return "?";
}

std::string Edge::describe() const {
  if (kind == EdgeKind::SwitchCase)
    return "SWITCH_CASE(" + std::to_string(caseValue) + ")";
  if (kind == EdgeKind::CaughtException)
    return "CAUGHT_EXCEPTION(" + exceptionType->toString() + ")";
  return toString(kind);
}

CFG::CFG(const ir::MethodBody& body) : body_(&body) {
  out_.resize(nodeCount());
  in_.resize(nodeCount());
}

void CFG::addEdge(Edge e) {
  e.sourceStmt = stmtOf(e.source);
  edges_.push_back(e);
  out_[e.source].push_back(e);
  in_[e.target].push_back(e);
}

std::string CFG::nodeLabel(int node) const {
  if (isEntry(node)) return "entry";
  if (isExit(node)) return "exit";
  const ir::Stmt* s = stmtOf(node);
  return std::to_string(s->index) + ": " + ir::stmtToString(*s);
}

std::string CFG::toDot() const {
  std::ostringstream out;
  out << "digraph \"" << owner().signature() << "\" {\n";
  out << "  node [shape=box,fontname=monospace];\n";
  for (int n = 0; n < nodeCount(); ++n) {
    std::string label = nodeLabel(n);
    std::string escaped;
    for (char c : label) {
      if (c == '"' || c == '\\') escaped += '\\';
      escaped += c;
    }
    out << "  n" << n << " [label=\"" << escaped << "\"];\n";
  }
  for (const Edge& e : edges_) {
    out << "  n" << e.source << " -> n" << e.target << " [label=\""
        << e.describe() << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace spa::cfg
