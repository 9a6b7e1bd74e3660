#include "spa/mgr/driver.hpp"

#include <set>

#include "spa/pta/result.hpp"

namespace spa::mgr {

namespace {

// setResult expects the analysis to hand back std::any holding a
// shared_ptr<T>; store it verbatim so getResult<T> can recover it.
void store(const ir::ResultHolder& holder, const std::string& id,
           std::any value) {
  holder.setResultAny(id, std::move(value));
}

}  // namespace

ExecutionReport execute(const Plan& plan, const ir::Program& program,
                        const ExecuteEnv& env,
                        const std::map<std::string, AnalysisFactory>* table) {
  if (!table) table = &builtinAnalyses();
  ExecutionReport report;
  for (const PlanStep& step : plan.steps) {
    auto it = table->find(step.id);
    if (it == table->end()) {
      report.ok = false;
      report.failedId = step.id;
      report.message = "no implementation registered for analysis id '" +
                       step.id + "'";
      return report;
    }
    const AnalysisFactory& factory = it->second;
    AnalysisEnv aenv{&program, step.options, env.outDir, env.log};
    try {
      switch (factory.kind) {
        case AnalysisKind::Method: {
          auto analysis = factory.method(aenv);
          std::set<const ir::MethodDecl*> reachable;
          bool restrict_ = analysis->reachableOnly() && program.hasResult("pta");
          if (restrict_) {
            reachable = program.getResult<pta::PTAResult>("pta")
                            .callGraph()
                            .reachableMethodsCI();
          }
          for (const ir::ClassDecl* cls : program.classes()) {
            for (const auto& m : cls->methods()) {
              if (!m->body()) continue;
              if (restrict_ && !reachable.count(m.get())) continue;
              store(*m->body(), step.id, analysis->analyzeMethod(*m->body()));
            }
          }
          break;
        }
        case AnalysisKind::Class: {
          auto analysis = factory.cls(aenv);
          for (const ir::ClassDecl* cls : program.classes()) {
            if (cls->isBuiltin()) continue;
            store(*cls, step.id, analysis->analyzeClass(*cls));
          }
          break;
        }
        case AnalysisKind::Program: {
          auto analysis = factory.program(aenv);
          store(program, step.id, analysis->analyzeProgram(program));
          break;
        }
        case AnalysisKind::Unknown:
          throw std::runtime_error("analysis kind unknown");
      }
    } catch (const std::exception& e) {
      report.ok = false;
      report.failedId = step.id;
      report.message = e.what();
      return report;
    }
    report.ranIds.push_back(step.id);
  }
  return report;
}

}  // namespace spa::mgr
