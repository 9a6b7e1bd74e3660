#include "spa/cfg/builder.hpp"

#include <cassert>

namespace spa::cfg {

namespace {

class CfgBuilder {
 public:
  CfgBuilder(const ir::MethodBody& body, const ir::Hierarchy& hierarchy,
             ExceptionMode mode, const ThrowResult* throws)
      : body_(body), hierarchy_(hierarchy), mode_(mode), throws_(throws) {}

  std::unique_ptr<CFG> build() {
    auto cfg = std::make_unique<CFG>(body_);
    const auto& stmts = body_.stmts();
    if (stmts.empty()) {
      cfg->addEdge({CFG::kEntry, CFG::kExit, EdgeKind::Entry});
      return cfg;
    }
    cfg->addEdge({CFG::kEntry, CFG::nodeOf(0), EdgeKind::Entry});

    for (const ir::Stmt& s : stmts) {
      int node = CFG::nodeOf(s.index);
      int next = s.index + 1 < static_cast<int>(stmts.size())
                     ? CFG::nodeOf(s.index + 1)
                     : CFG::kExit;
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, ir::Return>) {
              cfg->addEdge({node, CFG::kExit, EdgeKind::Return});
            } else if constexpr (std::is_same_v<T, ir::Goto>) {
              cfg->addEdge({node, CFG::nodeOf(v.target), EdgeKind::Goto});
            } else if constexpr (std::is_same_v<T, ir::If>) {
              cfg->addEdge({node, CFG::nodeOf(v.target), EdgeKind::IfTrue});
              cfg->addEdge({node, next, EdgeKind::IfFalse});
            } else if constexpr (std::is_same_v<T, ir::Switch>) {
              for (const auto& [value, target] : v.cases) {
                Edge e{node, CFG::nodeOf(target), EdgeKind::SwitchCase};
                e.caseValue = value;
                cfg->addEdge(e);
              }
              cfg->addEdge(
                  {node, CFG::nodeOf(v.defaultTarget), EdgeKind::SwitchDefault});
            } else if constexpr (std::is_same_v<T, ir::Throw>) {
              // Successors, if any, come from exception edges below.
            } else {
              cfg->addEdge({node, next, EdgeKind::FallThrough});
            }
          },
          s.data);

      if (mode_ != ExceptionMode::None) addExceptionEdges(*cfg, s);
    }
    return cfg;
  }

 private:
  void addExceptionEdges(CFG& cfg, const ir::Stmt& s) {
    assert(throws_ && "throw analysis required for exceptional modes");
    int node = CFG::nodeOf(s.index);
    auto handlers = body_.handlersFor(s.index);
    auto route = [&](const ir::Type& thrown) {
      for (const auto& h : handlers) {
        if (hierarchy_.isSubtype(thrown, h.catchType)) {
          Edge e{node, CFG::nodeOf(h.handlerIndex), EdgeKind::CaughtException};
          e.exceptionType = h.catchType;
          cfg.addEdge(e);
          return;
        }
      }
      cfg.addEdge({node, CFG::kExit, EdgeKind::UncaughtException});
    };
    for (const ir::Type& t : throws_->explicitTypes[s.index]) route(t);
    if (mode_ == ExceptionMode::All) {
      for (const ir::Type& t : throws_->implicitTypes[s.index]) route(t);
    }
  }

  const ir::MethodBody& body_;
  const ir::Hierarchy& hierarchy_;
  ExceptionMode mode_;
  const ThrowResult* throws_;
};

}  // namespace

std::unique_ptr<CFG> buildCfg(const ir::MethodBody& body,
                              const ir::Hierarchy& hierarchy,
                              ExceptionMode mode, const ThrowResult* throws) {
  return CfgBuilder(body, hierarchy, mode, throws).build();
}

}  // namespace spa::cfg
