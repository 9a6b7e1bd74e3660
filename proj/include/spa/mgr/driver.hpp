// Executes a plan over a program: method analyses run on every body, class
// analyses on every class, program analyses once; each result is stored at
// its level and retrieved through the uniform getResult(id) accessor.
#pragma once

#include <any>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>

#include "spa/ir/hierarchy.hpp"
#include "spa/mgr/plan.hpp"
#include "spa/plugin/taint.hpp"

namespace spa::mgr {

struct AnalysisEnv {
  const ir::Program* program = nullptr;
  OptionMap options;
  std::string outDir = ".";
  std::ostream* log = nullptr;  // analysis chatter (taint reports, timers)
};

class MethodAnalysis {
 public:
  virtual ~MethodAnalysis() = default;
  virtual std::any analyzeMethod(const ir::MethodBody& body) = 0;
  // Restrict to pointer-analysis-reachable methods when a pta result exists.
  virtual bool reachableOnly() const { return false; }
};

class ClassAnalysis {
 public:
  virtual ~ClassAnalysis() = default;
  virtual std::any analyzeClass(const ir::ClassDecl& cls) = 0;
};

class ProgramAnalysis {
 public:
  virtual ~ProgramAnalysis() = default;
  virtual std::any analyzeProgram(const ir::Program& program) = 0;
};

struct AnalysisFactory {
  AnalysisKind kind = AnalysisKind::Unknown;
  std::function<std::unique_ptr<MethodAnalysis>(const AnalysisEnv&)> method;
  std::function<std::unique_ptr<ClassAnalysis>(const AnalysisEnv&)> cls;
  std::function<std::unique_ptr<ProgramAnalysis>(const AnalysisEnv&)> program;
};

// ids: throw, cfg, constprop, livevar, pta, taint, members.
const std::map<std::string, AnalysisFactory>& builtinAnalyses();

// Result of the `members` class analysis.
struct MemberSummary {
  size_t fieldCount = 0;
  size_t methodCount = 0;
  size_t subclassCount = 0;
};

// Result of the `taint` program analysis.
struct TaintReport {
  std::vector<plugin::TaintFlow> flows;
  std::string text;  // one LEAK line per flow, sorted by (sink, source)
};

struct ExecutionReport {
  bool ok = true;
  std::string failedId;
  std::string message;
  std::vector<std::string> ranIds;
};

struct ExecuteEnv {
  std::string outDir = ".";
  std::ostream* log = nullptr;
};

// Runs the plan in order. On an analysis failure, execution stops and the
// report names the failed id; results stored so far remain attached.
// `table` overrides the built-in analysis table (tests register their own).
ExecutionReport execute(const Plan& plan, const ir::Program& program,
                        const ExecuteEnv& env = {},
                        const std::map<std::string, AnalysisFactory>* table = nullptr);

}  // namespace spa::mgr
