// Acceptance suite: runs every top-level criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exit code is the number of
// failed criteria.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "spa/bitset/hybrid_set.hpp"
#include "spa/bitset/regular_bitset.hpp"
#include "spa/bitset/sparse_bitset.hpp"
#include "spa/cfg/builder.hpp"
#include "spa/dataflow/constprop.hpp"
#include "spa/dataflow/livevars.hpp"
#include "spa/ir/parser.hpp"
#include "spa/mgr/cli.hpp"
#include "spa/mgr/driver.hpp"
#include "spa/plugin/taint.hpp"
#include "spa/pta/solver.hpp"
#include "support/corpus.hpp"
#include "support/df_oracle.hpp"
#include "support/pta_oracle.hpp"

using namespace spa;

namespace {

struct Criterion {
  std::string name;
  std::function<void(std::vector<std::string>&)> run;
  double budgetSeconds = 0;  // 0: no stated budget
};

void require(std::vector<std::string>& failures, bool condition,
             const std::string& what) {
  if (!condition) failures.push_back(what);
}

// --- 1. Sparse bit set layout and accounting -------------------------------

void criterionBitLayout(std::vector<std::string>& f) {
  bits::SparseBitSet sparse;
  for (uint32_t i : {20u, 100u, 3990u, 3993u}) sparse.set(i);
  require(f, sparse.leafPages() == 2,
          "expected exactly 2 leaf pages, got " +
              std::to_string(sparse.leafPages()));
  require(f, sparse.allocatedBitsOneLevel(16, 32) == 1024,
          "one-level accounting expected 1024 bits, got " +
              std::to_string(sparse.allocatedBitsOneLevel(16, 32)));
  bits::RegularBitSet regular(4096);
  for (uint32_t i : {20u, 100u, 3990u, 3993u}) regular.set(i);
  require(f, regular.allocatedBits() == 4096,
          "regular set spanning 4096 indices must report 4096 bits");
}

// --- 2. Bit-set oracle equivalence ------------------------------------------

struct RefSet {
  std::set<uint32_t> s;
  bool set(uint32_t i) { return s.insert(i).second; }
  bool clear(uint32_t i) { return s.erase(i) > 0; }
  bool test(uint32_t i) const { return s.count(i) > 0; }
  size_t count() const { return s.size(); }
  bool unionWith(const RefSet& o) {
    size_t before = s.size();
    s.insert(o.s.begin(), o.s.end());
    return s.size() != before;
  }
  bool intersectWith(const RefSet& o) {
    std::set<uint32_t> kept;
    for (uint32_t i : s) {
      if (o.s.count(i)) kept.insert(i);
    }
    bool changed = kept.size() != s.size();
    s = std::move(kept);
    return changed;
  }
  bool subtract(const RefSet& o) {
    size_t before = s.size();
    for (uint32_t i : o.s) s.erase(i);
    return s.size() != before;
  }
  std::vector<uint32_t> toVector() const { return {s.begin(), s.end()}; }
};

template <typename Set>
bool oneSequence(std::mt19937& rng) {
  std::uniform_int_distribution<uint32_t> idx(0, 65535);
  std::uniform_int_distribution<int> opDist(0, 99);
  std::uniform_int_distribution<int> lenDist(1, 200);
  Set target, source;
  RefSet refTarget, refSource;
  int len = lenDist(rng);
  for (int k = 0; k < len; ++k) {
    int op = opDist(rng);
    uint32_t i = idx(rng);
    bool ok = true;
    if (op < 40) {
      ok = target.set(i) == refTarget.set(i);
    } else if (op < 55) {
      ok = target.clear(i) == refTarget.clear(i);
    } else if (op < 70) {
      ok = source.set(i) == refSource.set(i);
    } else if (op < 80) {
      ok = target.unionWith(source) == refTarget.unionWith(refSource);
    } else if (op < 85) {
      ok = target.intersectWith(source) == refTarget.intersectWith(refSource);
    } else if (op < 90) {
      ok = target.subtract(source) == refTarget.subtract(refSource);
    } else if (op < 95) {
      ok = target.test(i) == refTarget.test(i);
    } else {
      ok = target.count() == refTarget.count();
    }
    if (!ok) return false;
  }
  return target.toVector() == refTarget.toVector() &&
         source.toVector() == refSource.toVector();
}

void criterionBitOracle(std::vector<std::string>& f) {
  std::mt19937 rng(0x5eed);
  const int sequences = 10000;
  for (int i = 0; i < sequences; ++i) {
    if (!oneSequence<bits::SparseBitSet>(rng))
      return require(f, false, "sparse sequence " + std::to_string(i));
    if (!oneSequence<bits::RegularBitSet>(rng))
      return require(f, false, "regular sequence " + std::to_string(i));
    if (!oneSequence<bits::HybridSet>(rng))
      return require(f, false, "hybrid sequence " + std::to_string(i));
  }
}

// --- 3. CI pointer-analysis oracle equivalence ------------------------------

void criterionPtaOracle(std::vector<std::string>& f) {
  auto corpus = testsupport::pointerCorpus();
  require(f, corpus.size() >= 10, "corpus must hold at least 10 programs");
  for (const auto& [name, text] : corpus) {
    auto program = ir::parseProgram(text);
    for (const ir::ClassDecl* c : program->classes()) {
      for (const auto& m : c->methods()) {
        if (m->body())
          require(f, m->body()->stmts().size() <= 60,
                  name + ": method over 60 statements");
      }
    }
    pta::InsensitiveSelector selector;
    auto result = pta::solvePointerAnalysis(*program, program->entryMethods(),
                                            selector);
    auto got = testsupport::toComparable(result);
    auto want = testsupport::ciOracle(*program);
    require(f, got.varPt == want.varPt, name + ": pt_ci differs from oracle");
    require(f, got.reachable == want.reachable,
            name + ": reachable set differs from oracle");
    require(f, got.callEdges == want.callEdges,
            name + ": call edges differ from oracle");
  }
}

// --- 4. Pointer-flow-graph store/alias/load example -------------------------

void criterionPfgExample(std::vector<std::string>& f) {
  auto program = ir::parseProgram(testsupport::kFieldAliasProgram);
  pta::InsensitiveSelector selector;
  auto result =
      pta::solvePointerAnalysis(*program, program->entryMethods(), selector);
  const ir::MethodBody* body =
      program->classByName("Box")->findMethod("main")->body();
  const ir::Var* b = nullptr;
  const ir::Var* x = nullptr;
  for (const ir::Var* v : body->vars()) {
    if (v->name == "b") b = v;
    if (v->name == "x") x = v;
  }
  std::set<std::string> names;
  for (const pta::Obj* o : result.ptCiOf(x)) names.insert(o->name());
  require(f, names.count("new Object@Box.main()/1") == 1,
          "o2 must flow into x");
  pta::Pointer* bPtr = result.varPointer(b);
  pta::Pointer* field = result.instanceFieldPointer("new Box@Box.main()/0", "f");
  pta::Pointer* xPtr = result.varPointer(x);
  require(f, field != nullptr, "pointer o1.f must exist in the PFG");
  require(f, result.hasPfgPath(bPtr, field), "missing PFG edge b -> o1.f");
  require(f, result.hasPfgPath(field, xPtr), "missing PFG edge o1.f -> x");
}

// --- 5. Context-sensitivity precision ---------------------------------------

void criterionContextSensitivity(std::vector<std::string>& f) {
  auto program = ir::parseProgram(testsupport::kIdentityProgram);
  const ir::MethodBody* body =
      program->classByName("Main")->findMethod("main")->body();
  const ir::Var* r1 = nullptr;
  const ir::Var* r2 = nullptr;
  for (const ir::Var* v : body->vars()) {
    if (v->name == "r1") r1 = v;
    if (v->name == "r2") r2 = v;
  }
  pta::InsensitiveSelector ci;
  auto ciResult =
      pta::solvePointerAnalysis(*program, program->entryMethods(), ci);
  require(f, ciResult.ptCiOf(r1).size() == 2 && ciResult.ptCiOf(r2).size() == 2,
          "context-insensitive run must merge both objects into r1 and r2");

  auto precise = [&](pta::ContextSelector&& selector, const std::string& name) {
    auto result = pta::solvePointerAnalysis(*program, program->entryMethods(),
                                            selector);
    require(f,
            result.ptCiOf(r1).size() == 1 && result.ptCiOf(r2).size() == 1,
            name + " must separate r1 and r2");
  };
  precise(pta::CallSiteSelector(1, 0), "1-call-site");
  precise(pta::CallSiteSelector(2, 1), "2-call-site");
  precise(pta::ObjectSelector(1, 0), "1-object");
  precise(pta::ObjectSelector(2, 1), "2-object");

  // Erased context-sensitive results stay inside the CI results everywhere.
  for (const auto& [name, text] : testsupport::pointerCorpus()) {
    auto p = ir::parseProgram(text);
    pta::InsensitiveSelector ciSel;
    auto ciCmp = testsupport::toComparable(
        pta::solvePointerAnalysis(*p, p->entryMethods(), ciSel));
    auto soundness = [&](pta::ContextSelector&& selector,
                         const std::string& selName) {
      auto cs =
          pta::solvePointerAnalysis(*p, p->entryMethods(), selector);
      require(f, testsupport::isSubsetOf(testsupport::toComparable(cs), ciCmp),
              name + ": erased " + selName + " facts exceed the CI facts");
    };
    soundness(pta::CallSiteSelector(1, 0), "1-call-site");
    soundness(pta::CallSiteSelector(2, 1), "2-call-site");
    soundness(pta::ObjectSelector(1, 0), "1-object");
    soundness(pta::ObjectSelector(2, 1), "2-object");
  }
}

// --- 6. Taint end to end -----------------------------------------------------

void criterionTaint(std::vector<std::string>& f) {
  const char* fullRules = R"(
source Src.source() -> result
transfer Str.concat(Str) from:param 0 to:result
sink Sink.sink(Str) param:0
)";
  auto program = ir::parseProgram(testsupport::kTaintProgram);
  {
    plugin::TaintPlugin taint(
        plugin::TaintConfig::parse(fullRules, *program));
    pta::InsensitiveSelector selector;
    pta::solvePointerAnalysis(*program, program->entryMethods(), selector,
                              {&taint});
    require(f, taint.flows().size() == 1,
            "expected exactly one taint flow, got " +
                std::to_string(taint.flows().size()));
    if (taint.flows().size() == 1) {
      require(f,
              taint.flows()[0].toString() ==
                  "LEAK source=Main.main@3 sink=Main.main@5 param=0",
              "unexpected flow: " + taint.flows()[0].toString());
    }
  }
  {
    const char* withoutTransfer = R"(
source Src.source() -> result
sink Sink.sink(Str) param:0
)";
    auto p2 = ir::parseProgram(testsupport::kTaintProgram);
    plugin::TaintPlugin taint(
        plugin::TaintConfig::parse(withoutTransfer, *p2));
    pta::InsensitiveSelector selector;
    pta::solvePointerAnalysis(*p2, p2->entryMethods(), selector, {&taint});
    require(f, taint.flows().empty(),
            "removing the transfer rule must remove the flow");
  }
}

// --- 7. Dataflow fixpoint and oracle equivalence -----------------------------

void criterionDataflow(std::vector<std::string>& f) {
  for (const auto& [name, text] : testsupport::controlCorpus()) {
    auto program = ir::parseProgram(text);
    for (const ir::ClassDecl* c : program->classes()) {
      for (const auto& m : c->methods()) {
        if (!m->body()) continue;
        cfg::ThrowResult tr = cfg::throwAnalysis(*m->body());
        auto cfgGraph = cfg::buildCfg(*m->body(), program->hierarchy(),
                                      cfg::ExceptionMode::Explicit, &tr);
        {
          dataflow::ConstantPropagation cp;
          auto fast = dataflow::solve(cp, *cfgGraph);
          auto slow = testsupport::roundRobinSolve(cp, *cfgGraph);
          for (int n = 0; n < cfgGraph->nodeCount(); ++n) {
            require(f,
                    fast.inFact(n) == slow.inFact(n) &&
                        fast.outFact(n) == slow.outFact(n),
                    name + ": constprop differs from the round-robin oracle");
          }
          require(f, dataflow::isFixpoint(cp, *cfgGraph, fast),
                  name + ": constprop result is not a fixpoint");
        }
        {
          dataflow::LiveVariables lv;
          auto fast = dataflow::solve(lv, *cfgGraph);
          auto slow = testsupport::roundRobinSolve(lv, *cfgGraph);
          for (int n = 0; n < cfgGraph->nodeCount(); ++n) {
            require(f,
                    fast.inFact(n) == slow.inFact(n) &&
                        fast.outFact(n) == slow.outFact(n),
                    name + ": livevar differs from the round-robin oracle");
          }
          require(f, dataflow::isFixpoint(lv, *cfgGraph, fast),
                  name + ": livevar result is not a fixpoint");
        }
      }
    }
  }

  // The 1-vs-2 join yields NAC.
  auto program = ir::parseProgram(testsupport::kBranchProgram);
  const ir::MethodBody* body =
      program->classByName("J")->findMethod("main")->body();
  auto cfgGraph =
      cfg::buildCfg(*body, program->hierarchy(), cfg::ExceptionMode::None);
  dataflow::ConstantPropagation cp;
  auto result = dataflow::solve(cp, *cfgGraph);
  const ir::Var* x = nullptr;
  for (const ir::Var* v : body->vars()) {
    if (v->name == "x") x = v;
  }
  require(f,
          result.inFactOf(body->stmts()[6]).get(x) ==
              dataflow::CPValue::nac(),
          "join of x=1 and x=2 must be NAC");
}

// --- 8. CFG edge categories --------------------------------------------------

void criterionCfgEdges(std::vector<std::string>& f) {
  auto build = [](const ir::Program& p, const ir::MethodBody& body,
                  cfg::ExceptionMode mode) {
    cfg::ThrowResult tr = cfg::throwAnalysis(body);
    return cfg::buildCfg(body, p.hierarchy(), mode,
                         mode == cfg::ExceptionMode::None ? nullptr : &tr);
  };
  auto count = [](const cfg::CFG& g, cfg::EdgeKind kind) {
    int n = 0;
    for (const cfg::Edge& e : g.edges()) n += e.kind == kind;
    return n;
  };

  {
    auto program = ir::parseProgram(testsupport::kBranchProgram);
    const ir::MethodBody* body =
        program->classByName("J")->findMethod("main")->body();
    auto g = build(*program, *body, cfg::ExceptionMode::None);
    require(f, count(*g, cfg::EdgeKind::IfTrue) == 1,
            "branch example needs exactly one IF_TRUE edge");
    require(f, count(*g, cfg::EdgeKind::IfFalse) == 1,
            "branch example needs exactly one IF_FALSE edge");
    std::set<int64_t> values;
    int defaults = 0;
    for (const cfg::Edge& e : g->edges()) {
      if (e.kind == cfg::EdgeKind::SwitchCase) values.insert(e.caseValue);
      if (e.kind == cfg::EdgeKind::SwitchDefault) ++defaults;
    }
    require(f, values == std::set<int64_t>{1, 5} && defaults == 1,
            "switch must label SWITCH_CASE(1), SWITCH_CASE(5), SWITCH_DEFAULT");
  }
  {
    auto program = ir::parseProgram(testsupport::kThrowCatchProgram);
    const ir::MethodBody* body =
        program->classByName("T")->findMethod("main")->body();
    auto explicitCfg = build(*program, *body, cfg::ExceptionMode::Explicit);
    int caught = 0;
    for (const cfg::Edge& e : explicitCfg->edges()) {
      if (e.kind == cfg::EdgeKind::CaughtException) {
        ++caught;
        require(f, e.exceptionType->className() == "MyError",
                "caught edge must carry MyError");
      }
    }
    require(f, caught == 1, "explicit mode needs exactly one caught edge");
    auto nullCfg = build(*program, *body, cfg::ExceptionMode::None);
    require(f, count(*nullCfg, cfg::EdgeKind::CaughtException) == 0,
            "mode null must not add exception edges");
  }
  // Mode monotonicity on the corpus.
  auto edgeSet = [](const cfg::CFG& g) {
    std::multiset<std::string> out;
    for (const cfg::Edge& e : g.edges()) {
      out.insert(std::to_string(e.source) + "->" + std::to_string(e.target) +
                 ":" + e.describe());
    }
    return out;
  };
  auto subset = [](const std::multiset<std::string>& a,
                   const std::multiset<std::string>& b) {
    for (const auto& e : a) {
      if (a.count(e) > b.count(e)) return false;
    }
    return true;
  };
  for (const auto& [name, text] : testsupport::controlCorpus()) {
    auto program = ir::parseProgram(text);
    for (const ir::ClassDecl* c : program->classes()) {
      for (const auto& m : c->methods()) {
        if (!m->body()) continue;
        auto none = build(*program, *m->body(), cfg::ExceptionMode::None);
        auto expl = build(*program, *m->body(), cfg::ExceptionMode::Explicit);
        auto all = build(*program, *m->body(), cfg::ExceptionMode::All);
        require(f, subset(edgeSet(*none), edgeSet(*expl)),
                name + ": edges(null) must be contained in edges(explicit)");
        require(f, subset(edgeSet(*expl), edgeSet(*all)),
                name + ": edges(explicit) must be contained in edges(all)");
      }
    }
  }
}

// --- 9. Configuration-driven dependency behavior -----------------------------

void criterionDependencies(std::vector<std::string>& f) {
  auto dir = std::filesystem::temp_directory_path() /
             ("spa-acceptance-" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  auto programPath = dir / "prog.ir";
  {
    std::ofstream out(programPath);
    out << testsupport::kBranchProgram;
  }
  auto run = [&](const std::vector<std::string>& args, std::string* outText,
                 std::string* errText) {
    std::vector<const char*> argv = {"analyzer"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = mgr::cliMain(static_cast<int>(argv.size()), argv.data(), out,
                            err);
    if (outText) *outText = out.str();
    if (errText) *errText = err.str();
    return code;
  };

  std::string out;
  int code = run({"-a", "cfg", programPath.string()}, &out, nullptr);
  require(f, code == 0 && out.find("plan: throw cfg\n") != std::string::npos,
          "-a cfg must produce plan [throw, cfg]");
  code = run({"-a", "cfg=exception:null", programPath.string()}, &out, nullptr);
  require(f, code == 0 && out.find("plan: cfg\n") != std::string::npos,
          "-a cfg=exception:null must produce plan [cfg]");

  auto registryPath = dir / "cyclic.reg";
  {
    std::ofstream reg(registryPath);
    reg << "- id: a\n  requires: [ b ]\n  options:\n"
        << "- id: b\n  requires: [ a ]\n  options:\n";
  }
  std::string err;
  code = run({"--config", registryPath.string(), "-a", "a",
              programPath.string()},
             nullptr, &err);
  require(f, code == 2, "cyclic registry must exit with code 2");
  require(f,
          err.find("cycle") != std::string::npos &&
              err.find("a") != std::string::npos &&
              err.find("b") != std::string::npos,
          "cycle error must name the cycle");
}

// --- 10. Result-store uniformity ---------------------------------------------

void criterionResultStore(std::vector<std::string>& f) {
  auto registry = mgr::parseRegistry(mgr::defaultRegistryText());
  auto program = ir::parseProgram(testsupport::kMixedProgram);
  mgr::Plan plan = mgr::makePlan(
      registry, {{"throw", {}}, {"cfg", {}}, {"constprop", {}}});
  mgr::ExecutionReport report = mgr::execute(plan, *program);
  require(f, report.ok, "plan [throw, cfg, constprop] must execute cleanly");

  std::map<const ir::MethodBody*, std::string> before;
  for (const ir::ClassDecl* c : program->classes()) {
    for (const auto& m : c->methods()) {
      if (!m->body()) continue;
      const ir::MethodBody* body = m->body();
      bool hasBoth = body->hasResult("cfg") && body->hasResult("constprop");
      require(f, hasBoth,
              m->signature() + " must answer getResult for cfg and constprop");
      if (!hasBoth) continue;
      const auto& g = body->getResult<cfg::CFG>("cfg");
      before[body] = dataflow::dumpResult(
          g, body->getResult<dataflow::DataflowResult<dataflow::CPFact>>(
                 "constprop"));
      bool threw = false;
      try {
        body->getResult<int>("never-ran");
      } catch (const ir::MissingResultError&) {
        threw = true;
      }
      require(f, threw, "querying an unran id must raise missing-result");
    }
  }

  mgr::ExecutionReport again = mgr::execute(plan, *program);
  require(f, again.ok, "re-execution must succeed");
  for (const auto& [body, dump] : before) {
    const auto& g = body->getResult<cfg::CFG>("cfg");
    std::string now = dataflow::dumpResult(
        g, body->getResult<dataflow::DataflowResult<dataflow::CPFact>>(
               "constprop"));
    require(f, now == dump, "re-execution must yield equal stored results");
  }
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {"sparse bit-set layout and exact accounting", criterionBitLayout, 1.0},
      {"bit-set oracle equivalence (10^4 random sequences)",
       criterionBitOracle, 30.0},
      {"context-insensitive pointer analysis equals brute-force oracle",
       criterionPtaOracle, 10.0},
      {"store/alias/load flows through the pointer flow graph",
       criterionPfgExample},
      {"context sensitivity separates call sites and stays sound",
       criterionContextSensitivity},
      {"taint analysis reports exactly the configured leak", criterionTaint,
       1.0},
      {"dataflow results match the round-robin oracle at a fixpoint",
       criterionDataflow},
      {"cfg edge categories, labels, and mode monotonicity",
       criterionCfgEdges},
      {"conditional dependency resolution and cycle rejection",
       criterionDependencies},
      {"uniform result store across method, class, and program levels",
       criterionResultStore},
  };

  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    std::vector<std::string> failures;
    auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].run(failures);
    } catch (const std::exception& e) {
      failures.push_back(std::string("exception: ") + e.what());
    }
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (criteria[i].budgetSeconds > 0 && seconds > criteria[i].budgetSeconds) {
      failures.push_back("over budget: " + std::to_string(seconds) + "s > " +
                         std::to_string(criteria[i].budgetSeconds) + "s");
    }
    char timing[32];
    std::snprintf(timing, sizeof(timing), "%.2fs", seconds);
    if (failures.empty()) {
      std::cout << "PASS  " << (i + 1) << ". " << criteria[i].name << " ("
                << timing << ")\n";
    } else {
      ++failed;
      std::cout << "FAIL  " << (i + 1) << ". " << criteria[i].name << " ("
                << timing << ")\n";
      for (const std::string& reason : failures) {
        std::cout << "      - " << reason << "\n";
      }
    }
  }
  std::cout << (failed == 0 ? "all criteria passed"
                            : std::to_string(failed) + " criteria failed")
            << "\n";
  return failed;
}
