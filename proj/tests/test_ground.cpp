#include "aspmtqs/ground/ground.hpp"
#include "aspmtqs/smkernel/smkernel.hpp"
#include "aspmtqs/syntax/parser.hpp"
#include "aspmtqs/syntax/printer.hpp"

#include "random_programs.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace aspmtqs;

namespace {

const char* kDecls =
    ":- sorts s; step :: 0..1.\n"
    ":- objects a, b :: s.\n"
    ":- constants intensional p(s), q(s) :: boolean; intensional x(s, step) :: real;\n"
    "   intensional r(s, step) :: boolean.\n"
    ":- variables C :: s; S :: step; V :: real.\n";

GroundProgram ground_text(const std::string& text) { return ground(prepare(parse_program(text))); }

std::vector<std::string> rule_texts(const GroundProgram& gp) {
  std::vector<std::string> out;
  for (const auto& r : gp.rules) out.push_back(to_string(r.rule));
  return out;
}

std::vector<std::string> models(const GroundProgram& gp, std::vector<Rational> values = {0, 1}) {
  OracleOptions o;
  o.default_values = std::move(values);
  std::vector<std::string> out;
  for (const auto& m : brute_force_stable_models(gp, o)) out.push_back(to_string(m));
  return out;
}

}  // namespace

TEST(Ground, EnumeratedVariableExpandsPerObject) {
  auto gp = ground_text(std::string(kDecls) + "p(C) <- q(C).");
  EXPECT_EQ(rule_texts(gp), (std::vector<std::string>{"p(a) <- q(a).", "p(b) <- q(b)."}));
}

TEST(Ground, FrameRuleOverTwoStepsHasOneInstancePerObject) {
  auto gp = ground_text(std::string(kDecls) + "{r(C, S + 1)} <- r(C, S).");
  EXPECT_EQ(rule_texts(gp), (std::vector<std::string>{"r(a, 1) <- r(a, 0) & not not r(a, 1).",
                                                      "r(b, 1) <- r(b, 0) & not not r(b, 1)."}));
}

TEST(Ground, RealValueVariableIsEliminated) {
  auto gp = ground_text(std::string(kDecls) + ":- inertial x.\nx(a, 0) = 1.\nx(b, 0) = 0.");
  auto rules = rule_texts(gp);
  EXPECT_NE(std::find(rules.begin(), rules.end(), "x(a, 1) = x(a, 0) <- not not x(a, 1) = x(a, 0)."), rules.end());
  for (const auto& r : gp.rules) EXPECT_FALSE(r.free_value.has_value());
  // Inertia carries each value over: exactly one stable model, derived by hand.
  EXPECT_EQ(models(gp), (std::vector<std::string>{"{x(a, 0)=1, x(a, 1)=1, x(b, 0)=0, x(b, 1)=0}"}));
}

TEST(Ground, FreeValueChoiceKeepsItsVariable) {
  auto gp = ground_text(std::string(kDecls) + "{x(C, 0) = V}.\n{x(C, 1) = V} <- p(C).\np(a).");
  int free = 0;
  for (const auto& r : gp.rules) free += r.free_value.has_value();
  EXPECT_EQ(free, 4);
  // x(b, 1) has no rule that can fire: no stable model over {0, 1} at all.
  EXPECT_TRUE(models(gp).empty());
}

TEST(Ground, OutOfRangeInstancesAreDropped) {
  auto gp = ground_text(std::string(kDecls) + "r(C, S + 1) <- r(C, S).\nr(a, S - 1) <- p(a).");
  EXPECT_EQ(rule_texts(gp), (std::vector<std::string>{"r(a, 0) <- p(a).", "r(a, 1) <- r(a, 0).",
                                                      "r(b, 1) <- r(b, 0)."}));
}

TEST(Ground, InstanceCountIsTheProductOfDomainSizes) {
  auto gp = ground_text(":- sorts s; t; step :: 0..2.\n:- objects a, b :: s; u, v, w :: t.\n"
                        ":- constants intensional p(s, t, step), q(s, t, step) :: boolean.\n"
                        ":- variables X :: s; Y :: t; S :: step.\np(X, Y, S) <- q(X, Y, S).");
  EXPECT_EQ(gp.rules.size(), 2u * 3u * 3u);
  EXPECT_EQ(gp.intensionals.size(), 2u * 2u * 3u * 3u);
}

TEST(Ground, IntensionalsListedOnce) {
  auto gp = ground_text(std::string(kDecls) + "p(a). p(a) <- q(a). p(C) <- q(C).");
  std::set<std::string> keys;
  for (const auto& i : gp.intensionals) EXPECT_TRUE(keys.insert(i.key()).second) << i.key();
  EXPECT_EQ(keys.count("p(b)"), 1u);
  EXPECT_EQ(keys.count("x(b, 1)"), 1u);
}

TEST(Ground, ArithmeticIsFolded) {
  auto gp = ground_text(std::string(kDecls) + "<- x(a, 0) > 2 * 3 - 1.");
  EXPECT_EQ(rule_texts(gp), (std::vector<std::string>{"<- x(a, 0) > 5."}));
}

TEST(Ground, Idempotent) {
  std::mt19937 rng(11);
  for (int i = 0; i < 100; ++i) {
    std::string src = testkit::random_tight_program(rng);
    GroundProgram once = ground(prepare(parse_program(src)));
    GroundProgram twice = ground(prepare(once.to_program()));
    EXPECT_EQ(rule_texts(twice), rule_texts(once)) << src;
  }
  GroundProgram framed = ground_text(std::string(kDecls) + ":- inertial x, r.\nx(a, 0) = 1.");
  EXPECT_EQ(rule_texts(ground(prepare(framed.to_program()))), rule_texts(framed));
}

TEST(Ground, ModelsSurviveRegrounding) {
  std::mt19937 rng(13);
  for (int i = 0; i < 60; ++i) {
    testkit::RandomProgramShape shape;
    shape.max_objects = 3;
    shape.max_rules = 3;
    std::string src = testkit::random_tight_program(rng, shape);
    GroundProgram gp = ground(prepare(parse_program(src)));
    EXPECT_EQ(models(ground(prepare(gp.to_program()))), models(gp)) << src;
  }
}

TEST(Ground, UnsafeRealVariable) {
  EXPECT_THROW(ground_text(std::string(kDecls) + ":- variables Y :: real.\np(a) <- Y > 0."), GroundError);
  EXPECT_NO_THROW(ground_text(std::string(kDecls) + ":- variables Y :: real.\np(a) <- Y = x(a, 0) & Y > 0."));
}

TEST(Ground, EmptySort) {
  Program p = parse_program(std::string(kDecls) + "p(C) <- q(C).");
  p.objects.clear();
  EXPECT_THROW(ground(prepare(p)), GroundError);
}

namespace {

const char* kFunctions =
    ":- sorts s.\n:- objects a :: s.\n"
    ":- constants intensional f(s), g(real) :: real; intensional p(real) :: boolean.\n"
    ":- variables X :: s; Y, Z, W :: real.\n";

std::size_t f_plain_violations(const std::string& rules) {
  return check_f_plain(parse_program(std::string(kFunctions) + rules)).size();
}

std::size_t av_violations(const std::string& rules) {
  return check_av_separated(parse_program(std::string(kFunctions) + rules)).size();
}

}  // namespace

TEST(FPlain, Examples) {
  EXPECT_EQ(f_plain_violations("f(a) = 3."), 0u);
  EXPECT_EQ(f_plain_violations("p(f(a))."), 1u);
  EXPECT_EQ(f_plain_violations("g(g(0)) = 2."), 1u);
  EXPECT_EQ(f_plain_violations("<- f(a) + 1 > 2."), 1u);
  // Plain in f (u = g(1) is f-free) and, read the other way round, in g.
  EXPECT_EQ(f_plain_violations("<- f(a) = g(1)."), 0u);
  EXPECT_EQ(f_plain_violations("<- f(a) = g(f(a))."), 1u);
  EXPECT_EQ(f_plain_violations("<- 3 = f(a)."), 0u);
}

TEST(FPlain, ViolationsCarryTheirRule) {
  auto v = check_f_plain(parse_program(std::string(kFunctions) + "f(a) = 1.\np(f(a))."));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].where.line, 6);
}

TEST(AvSeparated, Examples) {
  EXPECT_EQ(av_violations("<- f(X) = Y & g(Y) = Z."), 1u);
  EXPECT_EQ(av_violations("<- f(X) = Y & g(W) = Z."), 0u);
  EXPECT_EQ(av_violations("<- f(X) = Y & Y = W & g(W) = Z."), 1u);
}

TEST(AvSeparated, ChainsAgreeWithTransitiveClosure) {
  // Chain Y = V1 = ... = Vk = W, with one link removed or not; the oracle is
  // plain reachability over the written equalities.
  for (int links = 1; links <= 4; ++links) {
    for (int cut = -1; cut < links; ++cut) {
      std::string vars = ":- variables ";
      for (int i = 0; i <= links; ++i) vars += (i ? ", " : "") + std::string("V") + std::to_string(i);
      vars += " :: real.\n";
      std::string body = "<- f(X) = V0";
      for (int i = 0; i < links; ++i)
        if (i != cut) body += " & V" + std::to_string(i) + " = V" + std::to_string(i + 1);
      body += " & g(V" + std::to_string(links) + ") = Z.";
      std::size_t expected = cut < 0 ? 1 : 0;
      EXPECT_EQ(check_av_separated(parse_program(std::string(kFunctions) + vars + body)).size(), expected)
          << body;
    }
  }
}
