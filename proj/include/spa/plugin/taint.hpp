// Taint analysis as a pointer-analysis plugin: sources mint mocked taint
// objects, transfer methods move them between call-site variables, and sinks
// report any taint reaching a sensitive parameter at the fixpoint.
#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "spa/plugin/plugin.hpp"

namespace spa::plugin {

class TaintConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A call-site variable role in a transfer rule.
struct TaintVarSpec {
  enum class Role { Base, Result, Param };
  Role role = Role::Result;
  int paramIndex = 0;
};

struct TaintConfig {
  struct Source {
    const ir::MethodDecl* method;
    bool taintsResult = true;
  };
  struct Transfer {
    const ir::MethodDecl* method;
    TaintVarSpec from;
    TaintVarSpec to;
  };
  struct Sink {
    const ir::MethodDecl* method;
    int paramIndex;
  };

  std::vector<Source> sources;
  std::vector<Transfer> transfers;
  std::vector<Sink> sinks;

  // Line-oriented format:
  //   source <class>.<method>(<descriptor>) -> result
  //   transfer <class>.<method>(<descriptor>) from:{param N|base} to:{base|result}
  //   sink <class>.<method>(<descriptor>) param:N
  static TaintConfig parse(const std::string& text,
                           const ir::Program& program);
};

struct TaintFlow {
  const ir::Stmt* sourceSite;
  const ir::MethodDecl* sourceMethod;  // method containing the source site
  const ir::Stmt* sinkSite;
  const ir::MethodDecl* sinkMethod;
  int paramIndex;
  const pta::Obj* taintObj;

  // "LEAK source=C.m@3 sink=D.n@7 param=0"
  std::string toString() const;
};

class TaintPlugin final : public Plugin {
 public:
  static constexpr const char* kDescriptor = "TaintObj";

  explicit TaintPlugin(TaintConfig config) : config_(std::move(config)) {}

  void onStart(SolverAPI& solver) override { solver_ = &solver; }
  void onNewCallEdge(const pta::CallEdge& edge) override;
  void onNewPointsToSet(pta::CSVar* v, const pta::PointsToSet& delta) override;
  void onFinish() override;

  // Sorted by (sink, source); valid after onFinish.
  const std::vector<TaintFlow>& flows() const { return flows_; }
  std::string report() const;  // one LEAK line per flow

 private:
  void transferTaint(const pta::PointsToSet& objs, pta::CSVar* to);
  pta::CSVar* resolveVar(const pta::CSCallSite* cs, const TaintVarSpec& spec);

  TaintConfig config_;
  SolverAPI* solver_ = nullptr;
  std::vector<std::pair<pta::CSVar*, pta::CSVar*>> transferVars_;
  std::set<std::pair<pta::CSVar*, pta::CSVar*>> transferVarSet_;
  std::vector<TaintFlow> flows_;
};

}  // namespace spa::plugin
