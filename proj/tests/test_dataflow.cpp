#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spa/cfg/builder.hpp"
#include "spa/dataflow/constprop.hpp"
#include "spa/dataflow/livevars.hpp"
#include "spa/ir/parser.hpp"
#include "support/corpus.hpp"
#include "support/df_oracle.hpp"

using namespace spa;
using namespace spa::dataflow;

namespace {

struct Built {
  std::unique_ptr<ir::Program> program;
  std::unique_ptr<cfg::CFG> cfg;
  const ir::MethodBody* body;
};

Built buildMain(const char* text, const char* cls,
                cfg::ExceptionMode mode = cfg::ExceptionMode::None) {
  Built b;
  b.program = ir::parseProgram(text);
  b.body = b.program->classByName(cls)->findMethod("main")->body();
  cfg::ThrowResult tr = cfg::throwAnalysis(*b.body);
  b.cfg = cfg::buildCfg(*b.body, b.program->hierarchy(), mode,
                        mode == cfg::ExceptionMode::None ? nullptr : &tr);
  return b;
}

const ir::Var* varNamed(const ir::MethodBody& body, const char* name) {
  for (const ir::Var* v : body.vars()) {
    if (v->name == name) return v;
  }
  return nullptr;
}

template <typename A>
void checkAgainstOracle(const A& analysis, const cfg::CFG& cfg) {
  auto fast = solve(analysis, cfg);
  auto slow = testsupport::roundRobinSolve(analysis, cfg);
  for (int node = 0; node < cfg.nodeCount(); ++node) {
    CHECK(fast.inFact(node) == slow.inFact(node));
    CHECK(fast.outFact(node) == slow.outFact(node));
  }
  CHECK(isFixpoint(analysis, cfg, fast));
}

}  // namespace

TEST_CASE("constants propagate through arithmetic") {
  auto b = buildMain(R"(
    class A {
      static void main() {
        int x;
        int two;
        int y;
        x = 1;
        two = 2;
        y = x + two;
        return;
      }
    }
  )",
                     "A");
  ConstantPropagation cp;
  auto result = solve(cp, *b.cfg);
  const auto& out = result.outFactOf(b.body->stmts()[2]);
  CHECK(out.get(varNamed(*b.body, "x")) == CPValue::intConst(1));
  CHECK(out.get(varNamed(*b.body, "y")) == CPValue::intConst(3));
}

TEST_CASE("parameters are NAC at the boundary") {
  auto b = buildMain(R"(
    class A {
      static void work(int p) {
        int x;
        int one;
        one = 1;
        x = p + one;
        return;
      }
      static void main() { }
    }
  )",
                     "A");
  const ir::MethodBody* body =
      b.program->classByName("A")->findMethod("work")->body();
  auto cfg = cfg::buildCfg(*body, b.program->hierarchy(),
                           cfg::ExceptionMode::None);
  ConstantPropagation cp;
  auto result = solve(cp, *cfg);
  const auto& out = result.outFactOf(body->stmts()[1]);
  CHECK(out.get(varNamed(*body, "p")) == CPValue::nac());
  CHECK(out.get(varNamed(*body, "x")) == CPValue::nac());
}

TEST_CASE("two branches assigning 1 and 2 meet to NAC at the join") {
  auto b = buildMain(testsupport::kBranchProgram, "J");
  ConstantPropagation cp;
  auto result = solve(cp, *b.cfg);
  // L2: y = x is statement 6.
  const ir::Stmt& join = b.body->stmts()[6];
  CHECK(result.inFactOf(join).get(varNamed(*b.body, "x")) == CPValue::nac());
  // b = t == u with t = u = 3 evaluates to true.
  const auto& afterCmp = result.outFactOf(b.body->stmts()[9]);
  CHECK(afterCmp.get(varNamed(*b.body, "b")) == CPValue::boolConst(true));
}

TEST_CASE("division by constant zero yields UNDEF") {
  CHECK(ConstantPropagation::evalBinary(ir::BinaryOp::Div,
                                        CPValue::intConst(4),
                                        CPValue::intConst(0)) ==
        CPValue::undef());
  CHECK(ConstantPropagation::evalBinary(ir::BinaryOp::Rem,
                                        CPValue::intConst(4),
                                        CPValue::intConst(0)) ==
        CPValue::undef());
  SUBCASE("NAC dominates UNDEF in operands") {
    CHECK(ConstantPropagation::evalBinary(ir::BinaryOp::Add, CPValue::nac(),
                                          CPValue::undef()) == CPValue::nac());
    CHECK(ConstantPropagation::evalBinary(ir::BinaryOp::Add, CPValue::undef(),
                                          CPValue::intConst(1)) ==
          CPValue::undef());
  }
}

TEST_CASE("loads, news, casts and invoke results define NAC") {
  auto b = buildMain(R"(
    class A {
      int f;
      static int give() {
        int r;
        r = 7;
        return r;
      }
      static void main() {
        A a;
        int x;
        int y;
        a = new A;
        x = a.f;
        y = invokestatic A.give();
        return;
      }
    }
  )",
                     "A");
  ConstantPropagation cp;
  auto result = solve(cp, *b.cfg);
  const auto& out = result.outFactOf(b.body->stmts()[2]);
  CHECK(out.get(varNamed(*b.body, "x")) == CPValue::nac());
  CHECK(result.outFactOf(b.body->stmts()[2]).get(varNamed(*b.body, "a")) ==
        CPValue::nac());
}

TEST_CASE("live variables: uses flow backward") {
  auto b = buildMain(R"(
    class A {
      static void main() {
        int x;
        int y;
        int z;
        x = y + z;
        return;
      }
    }
  )",
                     "A");
  LiveVariables lv;
  auto result = solve(lv, *b.cfg);
  const auto& in0 = result.inFactOf(b.body->stmts()[0]);
  CHECK(in0.contains(varNamed(*b.body, "y")));
  CHECK(in0.contains(varNamed(*b.body, "z")));
  CHECK_FALSE(in0.contains(varNamed(*b.body, "x")));
}

TEST_CASE("live variables on the dead-store chain") {
  auto b = buildMain(R"(
    class A {
      static void main() {
        int x;
        int y;
        int z;
        x = y;
        x = z;
        return;
      }
    }
  )",
                     "A");
  // Hand-computed backward facts: in(s2)={x}? no, return has no value;
  // return uses nothing, the x defined at s1 is dead. in(s1)={z},
  // in(s0)={y,z}.
  auto b2 = buildMain(R"(
    class A {
      static int main() {
        int x;
        int y;
        int z;
        x = y;
        x = z;
        return x;
      }
    }
  )",
                      "A");
  LiveVariables lv;
  auto result = solve(lv, *b2.cfg);
  const ir::MethodBody* body = b2.body;
  const auto& in1 = result.inFactOf(body->stmts()[1]);
  CHECK(in1.contains(varNamed(*body, "z")));
  CHECK_FALSE(in1.contains(varNamed(*body, "y")));
  const auto& in0 = result.inFactOf(body->stmts()[0]);
  CHECK(in0.contains(varNamed(*body, "y")));
  CHECK(in0.contains(varNamed(*body, "z")));
  CHECK_FALSE(in0.contains(varNamed(*body, "x")));
  (void)b;
}

TEST_CASE("empty body: all live facts empty") {
  auto b = buildMain("class A { static void main() { } }", "A");
  LiveVariables lv;
  auto result = solve(lv, *b.cfg);
  for (int node = 0; node < b.cfg->nodeCount(); ++node) {
    CHECK(result.inFact(node).vars.empty());
    CHECK(result.outFact(node).vars.empty());
  }
}

TEST_CASE("oracle equivalence and fixpoint over the corpus") {
  for (const auto& [name, text] : testsupport::controlCorpus()) {
    CAPTURE(name);
    auto p = ir::parseProgram(text);
    for (const ir::ClassDecl* c : p->classes()) {
      for (const auto& m : c->methods()) {
        if (!m->body()) continue;
        cfg::ThrowResult tr = cfg::throwAnalysis(*m->body());
        auto cfg = cfg::buildCfg(*m->body(), p->hierarchy(),
                                 cfg::ExceptionMode::Explicit, &tr);
        checkAgainstOracle(ConstantPropagation(), *cfg);
        checkAgainstOracle(LiveVariables(), *cfg);
      }
    }
  }
}

TEST_CASE("edge-transfer identity: refine-off equals plain run") {
  // With needsEdgeTransfer false the solver skips transferEdge; wiring an
  // explicit identity must not change any fact.
  struct IdentityWrapped : ConstantPropagation {
    bool needsEdgeTransfer() const { return true; }
    CPFact transferEdge(const cfg::Edge&, const CPFact& out) const {
      return out;
    }
  };
  auto b = buildMain(testsupport::kBranchProgram, "J");
  auto plain = solve(ConstantPropagation(), *b.cfg);
  auto wrapped = solve(IdentityWrapped(), *b.cfg);
  for (int node = 0; node < b.cfg->nodeCount(); ++node) {
    CHECK(plain.inFact(node) == wrapped.inFact(node));
    CHECK(plain.outFact(node) == wrapped.outFact(node));
  }
}

TEST_CASE("branch refinement pins equal-compared constants on IF_TRUE") {
  auto b = buildMain(R"(
    class A {
      static void main(int p) {
        int k;
        int r;
        k = 7;
        if p == k goto L1;
        r = 0;
        return;
        L1: r = p;
        return;
      }
    }
  )",
                     "A");
  ConstantPropagation refine(/*edgeRefine=*/true);
  auto result = solve(refine, *b.cfg);
  // At L1 (stmt 4), p was compared equal to the constant 7.
  const auto& inTrue = result.inFactOf(b.body->stmts()[4]);
  CHECK(inTrue.get(varNamed(*b.body, "p")) == CPValue::intConst(7));
  const auto& outTrue = result.outFactOf(b.body->stmts()[4]);
  CHECK(outTrue.get(varNamed(*b.body, "r")) == CPValue::intConst(7));
  // The false branch keeps p as NAC.
  CHECK(result.inFactOf(b.body->stmts()[2]).get(varNamed(*b.body, "p")) ==
        CPValue::nac());
  // Refinement agrees with the round-robin oracle under the same contract.
  checkAgainstOracle(refine, *b.cfg);
}

TEST_CASE("solver and analyses share one entry point") {
  // Adding live variables required no solver change: both contracts flow
  // through the same solve template. This is a structural assertion: the
  // same function instantiates for both analyses.
  auto b = buildMain(testsupport::kBranchProgram, "J");
  auto r1 = solve(ConstantPropagation(), *b.cfg);
  auto r2 = solve(LiveVariables(), *b.cfg);
  CHECK(isFixpoint(ConstantPropagation(), *b.cfg, r1));
  CHECK(isFixpoint(LiveVariables(), *b.cfg, r2));
}

TEST_CASE("divergence guard names the analysis") {
  struct Bad {
    using Fact = int;
    bool isForward() const { return true; }
    std::string name() const { return "bad"; }
    bool needsEdgeTransfer() const { return false; }
    Fact newBoundaryFact(const cfg::CFG&) const { return 0; }
    Fact newInitialFact() const { return 0; }
    bool meetInto(const Fact& s, Fact& t) const {
      t = std::max(t, s);
      return false;
    }
    bool transferNode(const ir::Stmt&, const Fact&, Fact& out) const {
      ++out;  // never stabilizes
      return true;
    }
    Fact transferEdge(const cfg::Edge&, const Fact& f) const { return f; }
  };
  // Needs a cyclic CFG; a never-stable transfer drains anyway on a DAG.
  auto b = buildMain(testsupport::kLinkedProgram, "Main");
  try {
    solve(Bad(), *b.cfg, /*iterationCeiling=*/1000);
    FAIL("expected DivergenceError");
  } catch (const DivergenceError& e) {
    CHECK(std::string(e.what()).find("bad") != std::string::npos);
  }
}

TEST_CASE("dump format: one line per statement") {
  auto b = buildMain(testsupport::kBranchProgram, "J");
  auto result = solve(ConstantPropagation(), *b.cfg);
  std::string dump = dumpResult(*b.cfg, result);
  CHECK(dump.find("| IN: ") != std::string::npos);
  CHECK(dump.find("| OUT: ") != std::string::npos);
  size_t lines = std::count(dump.begin(), dump.end(), '\n');
  CHECK(lines == b.body->stmts().size());
}
