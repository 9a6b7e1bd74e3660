#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "spa/cfg/builder.hpp"
#include "spa/dataflow/constprop.hpp"
#include "spa/dataflow/livevars.hpp"
#include "spa/mgr/driver.hpp"
#include "spa/plugin/throw_plugin.hpp"
#include "spa/plugin/timer.hpp"
#include "spa/pta/solver.hpp"

namespace spa::mgr {

namespace {

const std::string& option(const OptionMap& options, const std::string& key) {
  auto it = options.find(key);
  if (it == options.end())
    throw std::runtime_error("missing option '" + key + "'");
  return it->second;
}

bool boolOption(const OptionMap& options, const std::string& key) {
  const std::string& v = option(options, key);
  if (v == "true") return true;
  if (v == "false") return false;
  throw std::runtime_error("option '" + key + "' must be true or false, got '" +
                           v + "'");
}

int intOption(const OptionMap& options, const std::string& key) {
  try {
    return std::stoi(option(options, key));
  } catch (const std::logic_error&) {
    throw std::runtime_error("option '" + key + "' must be an integer");
  }
}

std::vector<std::string> listOption(const OptionMap& options,
                                    const std::string& key) {
  std::vector<std::string> out;
  std::stringstream in(option(options, key));
  std::string item;
  while (std::getline(in, item, ',')) {
    size_t b = item.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    size_t e = item.find_last_not_of(" \t");
    out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

// "ci" | "<k>-call" | "<k>-obj" | "<k>-type"
std::unique_ptr<pta::ContextSelector> makeSelector(const std::string& cs,
                                                   int heap) {
  if (cs == "ci") return std::make_unique<pta::InsensitiveSelector>();
  size_t dash = cs.find('-');
  if (dash != std::string::npos && dash > 0) {
    int k = 0;
    try {
      k = std::stoi(cs.substr(0, dash));
    } catch (const std::logic_error&) {
      k = 0;
    }
    std::string kind = cs.substr(dash + 1);
    if (k >= 1) {
      if (kind == "call") return std::make_unique<pta::CallSiteSelector>(k, heap);
      if (kind == "obj") return std::make_unique<pta::ObjectSelector>(k, heap);
      if (kind == "type") return std::make_unique<pta::TypeSelector>(k, heap);
    }
  }
  throw std::runtime_error("bad cs option '" + cs +
                           "': expected ci, k-call, k-obj, or k-type");
}

void writeFile(const std::string& dir, const std::string& name,
               const std::string& content) {
  std::filesystem::create_directories(dir);
  std::ofstream out(std::filesystem::path(dir) / name);
  if (!out) throw std::runtime_error("cannot write " + name + " in " + dir);
  out << content;
}

std::string methodFileName(const ir::MethodDecl& m, const std::string& suffix) {
  return m.owner().name() + "." + m.name() + suffix;
}

cfg::ExceptionMode parseMode(const std::string& value) {
  if (value == "null") return cfg::ExceptionMode::None;
  if (value == "explicit") return cfg::ExceptionMode::Explicit;
  if (value == "all") return cfg::ExceptionMode::All;
  throw std::runtime_error("option 'exception' must be null, explicit, or all");
}

class ThrowPass final : public MethodAnalysis {
 public:
  std::any analyzeMethod(const ir::MethodBody& body) override {
    return std::make_shared<cfg::ThrowResult>(cfg::throwAnalysis(body));
  }
};

class CfgPass final : public MethodAnalysis {
 public:
  explicit CfgPass(const AnalysisEnv& env)
      : env_(env), mode_(parseMode(option(env.options, "exception"))),
        dump_(boolOption(env.options, "dump")) {}

  std::any analyzeMethod(const ir::MethodBody& body) override {
    const cfg::ThrowResult* throws = nullptr;
    if (mode_ != cfg::ExceptionMode::None)
      throws = &body.getResult<cfg::ThrowResult>("throw");
    std::shared_ptr<cfg::CFG> cfg = cfg::buildCfg(
        body, env_.program->hierarchy(), mode_, throws);
    if (dump_)
      writeFile(env_.outDir, methodFileName(body.method(), ".dot"),
                cfg->toDot());
    return cfg;
  }

 private:
  AnalysisEnv env_;
  cfg::ExceptionMode mode_;
  bool dump_;
};

class ConstPropPass final : public MethodAnalysis {
 public:
  explicit ConstPropPass(const AnalysisEnv& env)
      : env_(env),
        analysis_(boolOption(env.options, "edge-refine")),
        dump_(boolOption(env.options, "dump")) {}

  std::any analyzeMethod(const ir::MethodBody& body) override {
    const auto& cfg = body.getResult<cfg::CFG>("cfg");
    auto result = std::make_shared<dataflow::DataflowResult<dataflow::CPFact>>(
        dataflow::solve(analysis_, cfg));
    if (dump_)
      writeFile(env_.outDir, methodFileName(body.method(), ".constprop.txt"),
                dataflow::dumpResult(cfg, *result));
    return result;
  }

 private:
  AnalysisEnv env_;
  dataflow::ConstantPropagation analysis_;
  bool dump_;
};

class LiveVarPass final : public MethodAnalysis {
 public:
  explicit LiveVarPass(const AnalysisEnv& env)
      : env_(env), dump_(boolOption(env.options, "dump")) {}

  std::any analyzeMethod(const ir::MethodBody& body) override {
    const auto& cfg = body.getResult<cfg::CFG>("cfg");
    auto result = std::make_shared<dataflow::DataflowResult<dataflow::LiveFact>>(
        dataflow::solve(dataflow::LiveVariables(), cfg));
    if (dump_)
      writeFile(env_.outDir, methodFileName(body.method(), ".livevar.txt"),
                dataflow::dumpResult(cfg, *result));
    return result;
  }

 private:
  AnalysisEnv env_;
  bool dump_;
};

class PtaPass final : public ProgramAnalysis {
 public:
  explicit PtaPass(const AnalysisEnv& env) : env_(env) {}

  std::any analyzeProgram(const ir::Program& program) override {
    auto selector = makeSelector(option(env_.options, "cs"),
                                 intOption(env_.options, "heap"));
    pta::SolverOptions options;
    options.typeFilter = boolOption(env_.options, "type-filter");
    options.mergeTypes = listOption(env_.options, "merge-types");

    std::vector<plugin::Plugin*> plugins;
    plugin::TimerPlugin timer(env_.log);
    plugin::ThrowPropagationPlugin throwPlugin;
    if (boolOption(env_.options, "throw-plugin")) plugins.push_back(&throwPlugin);
    if (boolOption(env_.options, "timer")) plugins.push_back(&timer);

    auto result = std::make_shared<pta::PTAResult>(pta::solvePointerAnalysis(
        program, program.entryMethods(), *selector, plugins, options));
    if (env_.log) {
      *env_.log << "pta(" << selector->name() << "): #varpt "
                << result->varPtCount() << " | #reach " << result->reachCount()
                << " | #edges " << result->edgeCount() << "\n";
      for (const std::string& d : result->diagnostics())
        *env_.log << "warning: " << d << "\n";
      if (boolOption(env_.options, "throw-plugin"))
        *env_.log << throwPlugin.report();
    }
    if (boolOption(env_.options, "dump"))
      writeFile(env_.outDir, "pta-result.txt", result->dump());
    return result;
  }

 private:
  AnalysisEnv env_;
};

class TaintPass final : public ProgramAnalysis {
 public:
  explicit TaintPass(const AnalysisEnv& env) : env_(env) {}

  std::any analyzeProgram(const ir::Program& program) override {
    const std::string& path = option(env_.options, "config");
    if (path.empty())
      throw std::runtime_error("taint requires a config file: -a taint=config:<file>");
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read taint config '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    plugin::TaintConfig config = plugin::TaintConfig::parse(buffer.str(), program);

    auto selector = makeSelector(option(env_.options, "cs"),
                                 intOption(env_.options, "heap"));
    plugin::TaintPlugin taint(std::move(config));
    pta::solvePointerAnalysis(program, program.entryMethods(), *selector,
                              {&taint});

    auto report = std::make_shared<TaintReport>();
    report->flows = taint.flows();
    report->text = taint.report();
    if (env_.log) *env_.log << report->text;
    if (boolOption(env_.options, "dump"))
      writeFile(env_.outDir, "taint-flows.txt", report->text);
    return report;
  }

 private:
  AnalysisEnv env_;
};

class MemberPass final : public ClassAnalysis {
 public:
  explicit MemberPass(const AnalysisEnv& env) : env_(env) {}

  std::any analyzeClass(const ir::ClassDecl& cls) override {
    auto summary = std::make_shared<MemberSummary>();
    summary->fieldCount = cls.fields().size();
    summary->methodCount = cls.methods().size();
    summary->subclassCount =
        env_.program->hierarchy().subclassesOf(cls.name()).size();
    return summary;
  }

 private:
  AnalysisEnv env_;
};

}  // namespace

const std::map<std::string, AnalysisFactory>& builtinAnalyses() {
  static const std::map<std::string, AnalysisFactory> table = [] {
    std::map<std::string, AnalysisFactory> t;
    t["throw"] = {AnalysisKind::Method,
                  [](const AnalysisEnv&) { return std::make_unique<ThrowPass>(); },
                  nullptr, nullptr};
    t["cfg"] = {AnalysisKind::Method,
                [](const AnalysisEnv& env) { return std::make_unique<CfgPass>(env); },
                nullptr, nullptr};
    t["constprop"] = {
        AnalysisKind::Method,
        [](const AnalysisEnv& env) { return std::make_unique<ConstPropPass>(env); },
        nullptr, nullptr};
    t["livevar"] = {
        AnalysisKind::Method,
        [](const AnalysisEnv& env) { return std::make_unique<LiveVarPass>(env); },
        nullptr, nullptr};
    t["pta"] = {AnalysisKind::Program, nullptr, nullptr,
                [](const AnalysisEnv& env) { return std::make_unique<PtaPass>(env); }};
    t["taint"] = {
        AnalysisKind::Program, nullptr, nullptr,
        [](const AnalysisEnv& env) { return std::make_unique<TaintPass>(env); }};
    t["members"] = {
        AnalysisKind::Class, nullptr,
        [](const AnalysisEnv& env) { return std::make_unique<MemberPass>(env); },
        nullptr};
    return t;
  }();
  return table;
}

}  // namespace spa::mgr
