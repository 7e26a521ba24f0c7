#include "aspmtqs/cli/pipeline.hpp"
#include "aspmtqs/smt/smt.hpp"
#include "aspmtqs/syntax/parser.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace aspmtqs;
using namespace aspmtqs::smt;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::optional<SolverConfig> solver() {
  try {
    SolverConfig c;
    c.path = resolve_solver(std::nullopt);
    c.timeout_s = 30;
    return c;
  } catch (const SolverError&) {
    return std::nullopt;
  }
}

#define REQUIRE_SOLVER(cfg)                                   \
  auto cfg##_opt = solver();                                  \
  if (!cfg##_opt) GTEST_SKIP() << "no SMT solver available"; \
  const SolverConfig& cfg = *cfg##_opt

const char* kSmall =
    ":- sorts s. :- objects a :: s.\n"
    ":- constants intensional p(s) :: boolean; intensional f(s) :: real.\n"
    "f(a) = 1/2 <- p(a). f(a) = 3 <- not p(a). {p(a)}.\n";

}  // namespace

TEST(Sanitize, Examples) {
  EXPECT_EQ(sanitize("rccEC(a, c, 1)"), "rccEC_a_c_1");
  EXPECT_EQ(sanitize("p"), "p");
  EXPECT_EQ(sanitize("x(-1)"), "x_m1");
  EXPECT_EQ(sanitize("x(1/2)"), "x_1d2");
  EXPECT_NE(sanitize("and"), "and");
  EXPECT_NE(sanitize("3x").front(), '3');
}

TEST(Sanitize, CollisionsGetDistinctSymbols) {
  ASSERT_EQ(sanitize("f(a_b)"), sanitize("f(a, b)"));
  SmtScript s;
  std::string one = emit_term(Term::apply("f", {Term::object("a_b")}), s);
  std::string two = emit_term(Term::apply("f", {Term::object("a"), Term::object("b")}), s);
  EXPECT_NE(one, two);
  EXPECT_EQ(s.declarations.size(), 2u);
  EXPECT_EQ(s.sources.at(one), "f(a_b)");
  EXPECT_EQ(s.sources.at(two), "f(a, b)");
  EXPECT_EQ(emit_term(Term::apply("f", {Term::object("a_b")}), s), one);
}

TEST(Emit, Numbers) {
  EXPECT_EQ(emit_number(3), "3.0");
  EXPECT_EQ(emit_number(Rational(1, 2)), "(/ 1.0 2.0)");
  EXPECT_EQ(emit_number(-3), "(- 3.0)");
  EXPECT_EQ(emit_number(Rational(-7, 3)), "(- (/ 7.0 3.0))");
  EXPECT_EQ(emit_number(0), "0.0");
}

TEST(Emit, ScriptShape) {
  auto c = cli::compile(kSmall);
  SmtScript s = emit_smtlib(c.theory);
  std::string text = s.text();
  EXPECT_EQ(text.rfind("(set-option :produce-models true)\n(set-logic QF_NRA)\n", 0), 0u);
  EXPECT_NE(text.find("(declare-fun p_a () Bool)"), std::string::npos);
  EXPECT_NE(text.find("(declare-fun f_a () Real)"), std::string::npos);
  EXPECT_NE(text.find("(assert (=> p_a (= f_a (/ 1.0 2.0))))"), std::string::npos);
  EXPECT_TRUE(text.ends_with("(check-sat)\n(get-model)\n"));
  EXPECT_EQ(s.prelude().find("check-sat"), std::string::npos);
  // Parses back as balanced s-expressions.
  EXPECT_NO_THROW(parse_sexprs(text));
}

TEST(Emit, EmptyTheory) {
  EXPECT_EQ(emit_smtlib(CompletedTheory{}).text(),
            "(set-option :produce-models true)\n(set-logic QF_NRA)\n(check-sat)\n(get-model)\n");
}

TEST(Emit, Deterministic) {
  std::string src = slurp(std::filesystem::path(ASPMTQS_SCENARIOS) / "growth.aspmtqs");
  std::string first = emit_smtlib(cli::compile(src).theory).text();
  for (int i = 0; i < 3; ++i) EXPECT_EQ(emit_smtlib(cli::compile(src).theory).text(), first);
}

TEST(Emit, PruningDropsOnlyUnmentionedDefinitions) {
  auto c = cli::compile(slurp(std::filesystem::path(ASPMTQS_SCENARIOS) / "example1.aspmtqs"));
  auto kept = kept_clauses(c.theory, {});
  ASSERT_EQ(kept.size(), c.theory.clauses.size());
  SmtScript pruned = emit_smtlib(c.theory);
  EmitOptions all;
  all.prune = false;
  SmtScript full = emit_smtlib(c.theory, {}, all);
  EXPECT_FALSE(pruned.pruned.empty());
  EXPECT_TRUE(full.pruned.empty());
  EXPECT_EQ(pruned.assertions.size() + pruned.pruned.size(), full.assertions.size());
  for (std::size_t i = 0; i < kept.size(); ++i)
    if (c.theory.clauses[i].defines == "rccDR(a, b)") {
      EXPECT_TRUE(kept[i]);
    }
}

TEST(SExpr, ParseAndPrint) {
  auto v = parse_sexprs("(a (b c) d) e");
  ASSERT_EQ(v.size(), 2u);
  EXPECT_TRUE(v[0].is_list);
  EXPECT_EQ(v[0].to_string(), "(a (b c) d)");
  EXPECT_EQ(v[1].atom, "e");
  EXPECT_THROW(parse_sexprs("(a (b"), SolverError);
}

TEST(ParseModel, ExactValues) {
  Model m = parse_model("((define-fun x_a () Real (/ 1.0 2.0)) (define-fun p_a () Bool true)"
                        " (define-fun n () Real (- 3.0)))");
  EXPECT_EQ(m.reals.at("x_a").value, Rational(1, 2));
  EXPECT_FALSE(m.reals.at("x_a").approximate);
  EXPECT_EQ(m.reals.at("n").value, -3);
  EXPECT_TRUE(m.booleans.at("p_a"));
  EXPECT_FALSE(m.has_approximations());
}

TEST(ParseModel, AlgebraicValuesAreFlagged) {
  Model m = parse_model("(model (define-fun z () Real (root-obj (+ (^ x 2) (- 2)) 2)))");
  const RealValue& z = m.reals.at("z");
  EXPECT_TRUE(z.approximate);
  EXPECT_TRUE(m.has_approximations());
  EXPECT_LT(std::abs(z.value.get_d() - std::sqrt(2.0)), 1e-12);
  EXPECT_EQ(z.decimal.substr(0, 12), "1.4142135623");
}

TEST(ParseModel, NamesMapBackToInstances) {
  auto c = cli::compile(kSmall);
  SmtScript s = emit_smtlib(c.theory);
  Model m = parse_model("((define-fun f_a () Real 3.0) (define-fun p_a () Bool false))", &s);
  EXPECT_EQ(m.reals.at("f(a)").value, 3);
  EXPECT_FALSE(m.booleans.at("p(a)"));
  Interpretation I = m.interpretation();
  EXPECT_EQ(I.functions.at("f(a)"), 3);
}

TEST(ParseModel, BadFragmentsAreNamed) {
  try {
    parse_model("((define-fun x () Real (frobnicate 1)))");
    FAIL();
  } catch (const SolverError& e) {
    EXPECT_NE(std::string(e.what()).find("frobnicate"), std::string::npos) << e.what();
  }
}

TEST(RealRoots, QuadraticAndCubic) {
  auto r = real_roots({-2, 0, 1}, 15);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_LT(std::abs(r[0].get_d() + std::sqrt(2.0)), 1e-14);
  EXPECT_LT(std::abs(r[1].get_d() - std::sqrt(2.0)), 1e-14);
  // (x - 1)(x - 2)(x + 3) = x^3 - 7x + 6
  auto c = real_roots({6, -7, 0, 1}, 10);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_LT(std::abs(c[0].get_d() + 3), 1e-9);
  EXPECT_LT(std::abs(c[1].get_d() - 1), 1e-9);
  EXPECT_LT(std::abs(c[2].get_d() - 2), 1e-9);
  EXPECT_TRUE(real_roots({1, 0, 1}, 10).empty());
}

TEST(Solver, TrivialScript) {
  REQUIRE_SOLVER(cfg);
  SmtScript s;
  s.assertions.push_back("true");
  EXPECT_EQ(run_solver(s, cfg).verdict, Verdict::Sat);
  s.assertions.push_back("false");
  SmtResult r = run_solver(s, cfg);
  EXPECT_EQ(r.verdict, Verdict::Unsat);
  EXPECT_FALSE(r.model.has_value());
}

TEST(Solver, ErrorsInAssertionsAreNotVerdicts) {
  REQUIRE_SOLVER(cfg);
  SmtScript s;
  s.assertions.push_back("(and undeclared_symbol)");
  EXPECT_EQ(run_solver(s, cfg).verdict, Verdict::SolverError);
}

TEST(Solver, MissingExecutable) {
  SolverConfig cfg;
  cfg.path = "/nonexistent/solver";
  EXPECT_THROW(run_solver(SmtScript{}, cfg), SolverError);
  EXPECT_THROW(resolve_solver(std::string("/nonexistent/solver")), SolverError);
}

TEST(Solver, ModelSatisfiesTheCompletion) {
  REQUIRE_SOLVER(cfg);
  auto c = cli::compile(kSmall);
  SmtScript s = emit_smtlib(c.theory);
  SmtResult r = run_solver(s, cfg);
  ASSERT_EQ(r.verdict, Verdict::Sat);
  ASSERT_TRUE(r.model);
  Interpretation I = r.model->interpretation();
  for (const auto& cl : c.theory.clauses) EXPECT_TRUE(evaluate(cl.formula, I));
}

TEST(Solver, ExampleOneAndItsEqualRadiiVariant) {
  REQUIRE_SOLVER(cfg);
  std::string src = slurp(std::filesystem::path(ASPMTQS_SCENARIOS) / "example1.aspmtqs");
  auto c = cli::compile(src);
  EXPECT_EQ(run_solver(cli::script_for(c), cfg).verdict, Verdict::Sat);
  auto eq = cli::compile(src + "\n<- r(a) != r(b).\n<- r(b) != r(c).\n");
  EXPECT_EQ(run_solver(cli::script_for(eq), cfg).verdict, Verdict::Unsat);
}

TEST(Entailment, TruthAndFalsity) {
  REQUIRE_SOLVER(cfg);
  auto c = cli::compile(kSmall);
  EXPECT_EQ(check_entailed(c.theory, Formula::truth(), cfg).entailment, Entailment::Entailed);
  EXPECT_EQ(check_entailed(c.theory, Formula::falsity(), cfg).entailment, Entailment::NotEntailed);
}

TEST(Entailment, ExactlyTheCommonConsequences) {
  REQUIRE_SOLVER(cfg);
  auto c = cli::compile(kSmall);
  Program p = c.program;
  auto q = [&](const char* text) { return check_entailed(c.theory, parse_formula(text, p), cfg).entailment; };
  // Models: {p, f = 1/2} and {f = 3}.
  EXPECT_EQ(q("f(a) = 1/2 | f(a) = 3"), Entailment::Entailed);
  EXPECT_EQ(q("f(a) > 0"), Entailment::Entailed);
  EXPECT_EQ(q("f(a) = 3"), Entailment::NotEntailed);
  EXPECT_EQ(q("p(a)"), Entailment::NotEntailed);
  EXPECT_EQ(q("not p(a) -> f(a) = 3"), Entailment::Entailed);
  auto counter = check_entailed(c.theory, parse_formula("p(a)", p), cfg);
  ASSERT_TRUE(counter.solver.model);
  EXPECT_FALSE(counter.solver.model->booleans.at("p(a)"));
}

TEST(Batch, IndependentChecks) {
  REQUIRE_SOLVER(cfg);
  auto c = cli::compile(kSmall);
  SmtScript s = emit_smtlib(c.theory);
  auto v = run_batch(s, {{"p_a"}, {"(= f_a 2.0)"}, {"(not p_a)", "(= f_a 3.0)"}},
                     cfg);
  EXPECT_EQ(v, (std::vector<Verdict>{Verdict::Sat, Verdict::Unsat, Verdict::Sat}));
}

TEST(Batch, AgreesWithSeparateRuns) {
  REQUIRE_SOLVER(cfg);
  std::mt19937 rng(9);
  SmtScript base;
  base.declarations = {{"x", "Real"}, {"y", "Real"}};
  base.assertions = {"(> (+ (* x x) (* y y)) 1.0)"};
  std::vector<std::vector<std::string>> checks;
  for (int i = 0; i < 20; ++i) {
    int a = std::uniform_int_distribution<int>(-2, 2)(rng);
    int b = std::uniform_int_distribution<int>(-2, 2)(rng);
    checks.push_back({"(= x " + emit_number(a) + ")", "(= y " + emit_number(b) + ")"});
  }
  auto batch = run_batch(base, checks, cfg);
  ASSERT_EQ(batch.size(), checks.size());
  for (std::size_t i = 0; i < checks.size(); ++i) {
    SmtScript one = base;
    one.assertions.insert(one.assertions.end(), checks[i].begin(), checks[i].end());
    EXPECT_EQ(batch[i], run_solver(one, cfg).verdict) << i;
  }
}

TEST(Solver, TimeoutIsAVerdict) {
  REQUIRE_SOLVER(base);
  SolverConfig cfg = base;
  cfg.timeout_s = 0.05;
  // Pell-style equation with a large coefficient: no quick answer.
  SmtScript s;
  s.logic = "QF_NIA";
  s.declarations = {{"a", "Int"}, {"b", "Int"}, {"c", "Int"}};
  s.assertions = {"(and (> a 1) (> b 1) (> c 1) (= (+ (* a a a) (* b b b)) (* c c c)))"};
  SmtResult r = run_solver(s, cfg);
  EXPECT_TRUE(r.verdict == Verdict::Timeout || r.verdict == Verdict::Unknown) << to_string(r.verdict);
}
