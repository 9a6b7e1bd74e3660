// Per-method control flow graph with categorized, labeled edges. Nodes are
// the synthetic entry/exit plus one node per statement.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spa/ir/program.hpp"

namespace spa::cfg {

enum class EdgeKind {
  Entry,
  FallThrough,
  Goto,
  IfTrue,
  IfFalse,
  SwitchCase,
  SwitchDefault,
  CaughtException,
  UncaughtException,
  Return,
};

std::string toString(EdgeKind k);

struct Edge {
  Edge(int source, int target, EdgeKind kind)
      : source(source), target(target), kind(kind) {}

  int source;
  int target;
  EdgeKind kind;
  int64_t caseValue = 0;                  // SwitchCase only
  std::optional<ir::Type> exceptionType;  // CaughtException only
  const ir::Stmt* sourceStmt = nullptr;   // null when source is entry

  // Kind plus label, e.g. "SWITCH_CASE(5)" or "CAUGHT_EXCEPTION(MyError)".
  std::string describe() const;
};

class CFG {
 public:
  static constexpr int kEntry = 0;
  static constexpr int kExit = 1;

  explicit CFG(const ir::MethodBody& body);

  const ir::MethodBody& body() const { return *body_; }
  const ir::MethodDecl& owner() const { return body_->method(); }

  int nodeCount() const { return static_cast<int>(body_->stmts().size()) + 2; }
  static int nodeOf(int stmtIndex) { return stmtIndex + 2; }
  static bool isEntry(int node) { return node == kEntry; }
  static bool isExit(int node) { return node == kExit; }
  // Null for entry/exit nodes.
  const ir::Stmt* stmtOf(int node) const {
    return node >= 2 ? &body_->stmts()[node - 2] : nullptr;
  }

  const std::vector<Edge>& outEdges(int node) const { return out_[node]; }
  const std::vector<Edge>& inEdges(int node) const { return in_[node]; }
  const std::vector<Edge>& edges() const { return edges_; }

  std::string nodeLabel(int node) const;  // "entry", "exit", "3: x = y"
  std::string toDot() const;

  // Builder-facing; the graph is immutable once built.
  void addEdge(Edge e);

 private:
  const ir::MethodBody* body_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Edge>> out_;
  std::vector<std::vector<Edge>> in_;
};

}  // namespace spa::cfg
