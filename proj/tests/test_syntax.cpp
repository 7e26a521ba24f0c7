#include "aspmtqs/syntax/desugar.hpp"
#include "aspmtqs/syntax/evaluator.hpp"
#include "aspmtqs/syntax/parser.hpp"
#include "aspmtqs/syntax/printer.hpp"

#include "random_programs.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace aspmtqs;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

ParseError parse_failure(std::string_view text) {
  try {
    parse_program(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no parse error for: " << text;
  return ParseError(ParseError::Kind::Syntax, {}, "none");
}

const char* kSmall =
    ":- sorts s; step :: 0..2.\n"
    ":- objects a, b :: s.\n"
    ":- constants intensional p(s), q(s) :: boolean; intensional f(s) :: real; g(s, step) :: real.\n"
    ":- variables X :: s; S :: step.\n";

}  // namespace

TEST(Parse, MinimalGeometricProgram) {
  Program p = parse_program(":- sorts circle. :- objects a,b :: circle. rccDC(a,b).");
  int geometric = 0;
  for (const auto& s : p.sorts) geometric += s.kind == SortKind::Geometric;
  EXPECT_EQ(geometric, 1);
  EXPECT_EQ(p.objects.size(), 2u);
  ASSERT_EQ(p.rules.size(), 1u);
  EXPECT_EQ(p.rules[0].head.kind, Head::Kind::Atom);
  EXPECT_TRUE(p.rules[0].body.is_truth());
  ASSERT_NE(p.find_constant("rccDC"), nullptr);
  EXPECT_TRUE(p.find_constant("rccDC")->intensional);
}

TEST(Parse, ExampleOneProgram) {
  Program p = parse_program(slurp(std::filesystem::path(ASPMTQS_SCENARIOS) / "example1.aspmtqs"));
  int circles = 0;
  for (const auto& o : p.objects) {
    auto shape = p.shape_of(o.name);
    circles += shape && *shape == spatial::Shape::circle();
  }
  EXPECT_EQ(circles, 3);
  ASSERT_EQ(p.rules.size(), 3u);
  EXPECT_EQ(to_string(p.rules[0]), "rccDR(a, b).");
  EXPECT_EQ(to_string(p.rules[1]), "rccDR(b, c).");
  EXPECT_EQ(to_string(p.rules[2]), "rccPP(a, c).");
}

TEST(Parse, UnclosedParenthesisIsASyntaxErrorAtTheParenthesis) {
  ParseError e = parse_failure("p(x) :- q(x");
  EXPECT_EQ(e.kind(), ParseError::Kind::Syntax);
  EXPECT_EQ(e.where(), (SourceLocation{1, 10}));
}

TEST(Parse, ErrorKindsCarryLocations) {
  ParseError lexical = parse_failure(":- sorts s.\n  $");
  EXPECT_EQ(lexical.kind(), ParseError::Kind::Lexical);
  EXPECT_EQ(lexical.where(), (SourceLocation{2, 3}));

  ParseError undeclared = parse_failure(":- sorts s. :- objects a :: s.\nzz(a).");
  EXPECT_EQ(undeclared.kind(), ParseError::Kind::Undeclared);
  EXPECT_EQ(undeclared.where().line, 2);

  ParseError arity = parse_failure(std::string(kSmall) + "p(a, b).");
  EXPECT_EQ(arity.kind(), ParseError::Kind::Arity);
  EXPECT_EQ(arity.where().line, 5);

  ParseError sort = parse_failure(std::string(kSmall) + "p(3).");
  EXPECT_EQ(sort.kind(), ParseError::Kind::Sort);

  ParseError twice = parse_failure(":- sorts s; s.");
  EXPECT_EQ(twice.kind(), ParseError::Kind::Declaration);
}

TEST(Parse, EmptyEnumeratedAndBadRangesAreRejected) {
  EXPECT_THROW(parse_program(":- sorts step :: 3..1."), ParseError);
}

TEST(Parse, NegationAndTruthUseTheImplicationEncoding) {
  Program p = parse_program(std::string(kSmall) + "p(a) <- not q(a).\nq(b).");
  const Formula& body = p.rules[0].body;
  const auto* imp = body.as<ImpliesFormula>();
  ASSERT_NE(imp, nullptr);
  EXPECT_TRUE(imp->consequent.is_falsity());
  EXPECT_NE(imp->antecedent.as<AtomFormula>(), nullptr);

  const Formula& truth = p.rules[1].body;
  const auto* t = truth.as<ImpliesFormula>();
  ASSERT_NE(t, nullptr);
  EXPECT_TRUE(t->antecedent.is_falsity());
  EXPECT_TRUE(t->consequent.is_falsity());
}

TEST(Parse, LiteralsAreExactRationals) {
  Program p = parse_program(std::string(kSmall) + "<- f(a) > 0.1.\n<- f(b) = 1/3.\n<- f(a) < 123456789012345678901234567890.");
  auto rhs = [&](std::size_t i) {
    return p.rules[i].body.as<CompareFormula>()->rhs.as<NumberTerm>()->value;
  };
  EXPECT_EQ(rhs(0), Rational(1, 10));
  EXPECT_EQ(rhs(1), Rational(1, 3));
  EXPECT_EQ(rhs(2), Rational(mpz_class("123456789012345678901234567890")));
}

TEST(Parse, CommentsAndChoiceHeads) {
  Program p = parse_program(std::string(kSmall) + "% a comment\n{p(X)} <- q(X). % trailing\n{f(a) = 3}.");
  ASSERT_EQ(p.rules.size(), 2u);
  EXPECT_TRUE(p.rules[0].head.choice);
  EXPECT_EQ(p.rules[0].head.kind, Head::Kind::Atom);
  EXPECT_TRUE(p.rules[1].head.choice);
  EXPECT_EQ(p.rules[1].head.kind, Head::Kind::FunctionEq);
}

TEST(Parse, FormulaAgainstDeclarations) {
  Program p = parse_program(kSmall);
  Formula f = parse_formula("p(a) | not q(b) -> f(a) >= 2", p);
  EXPECT_EQ(to_string(f), "p(a) | not q(b) -> f(a) >= 2");
  EXPECT_THROW(parse_formula("p(c)", p), ParseError);
}

TEST(Desugar, ChoiceBecomesDoubleNegation) {
  Program p = parse_program(std::string(kSmall) + "{p(a)} <- q(a).\n{f(a) = 3}.");
  EXPECT_EQ(to_string(desugar_choice(p.rules[0])), "p(a) <- q(a) & not not p(a).");
  EXPECT_EQ(to_string(desugar_choice(p.rules[1])), "f(a) = 3 <- not not f(a) = 3.");
}

TEST(Desugar, IdempotentAndIdentityOnOrdinaryRules) {
  Program p = parse_program(std::string(kSmall) + "{p(X)} <- q(X).\np(a) <- not q(a).\n<- p(b).\n{f(X) = 1}.");
  for (const auto& r : p.rules) {
    Rule once = desugar_choice(r);
    EXPECT_EQ(desugar_choice(once), once) << to_string(r);
    if (!r.head.choice) {
      EXPECT_EQ(once, r);
    }
  }
}

TEST(Desugar, FrameAxiomForFunctionsAndRelations) {
  SortDecl step{"step", SortKind::IntegerRange, 0, 1, {}, true};
  ConstantDecl x{"x", {"circle", "step"}, "real", true};
  auto fx = expand_frame_macro(x, step);
  ASSERT_EQ(fx.size(), 1u);
  EXPECT_TRUE(fx[0].head.choice);
  EXPECT_EQ(to_string(fx[0]), "{ x(_X1, _S + 1) = _V } <- x(_X1, _S) = _V.");

  ConstantDecl ec{"rccEC", {"circle", "circle", "step"}, "boolean", true};
  auto rel = expand_frame_macro(ec, step);
  ASSERT_EQ(rel.size(), 1u);
  EXPECT_EQ(to_string(rel[0]), "{ rccEC(_X1, _X2, _S + 1) } <- rccEC(_X1, _X2, _S).");

  ConstantDecl p{"p", {"circle"}, "boolean", true};
  EXPECT_THROW(expand_frame_macro(p, step), Error);
}

TEST(Desugar, InertialDeclarationNeedsStepArgument) {
  ParseError e = parse_failure(std::string(kSmall) + ":- inertial p.");
  EXPECT_EQ(e.kind(), ParseError::Kind::Declaration);
}

TEST(RoundTrip, Scenarios) {
  int files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(ASPMTQS_SCENARIOS)) {
    if (entry.path().extension() != ".aspmtqs") continue;
    ++files;
    Program p = parse_program(slurp(entry.path()));
    std::string printed = pretty_print(p);
    Program again = parse_program(printed);
    EXPECT_EQ(again, p) << entry.path() << "\n" << printed;
    EXPECT_EQ(pretty_print(again), printed);
  }
  EXPECT_GE(files, 7);
}

TEST(RoundTrip, RandomPrograms) {
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    std::string src = testkit::random_tight_program(rng);
    Program p = parse_program(src);
    EXPECT_EQ(parse_program(pretty_print(p)), p) << src;
  }
}

TEST(RoundTrip, OperatorsAndNesting) {
  std::string src = std::string(kSmall) +
                    "p(a) <- (q(a) | not p(b)) & f(a) * (f(b) - 2) <= -3 & -f(a) != 1/2.\n"
                    "<- q(a) -> (p(a) -> q(b)).\n"
                    "g(a, S + 1) = g(a, S) * 2 <- S < 2.\n";
  Program p = parse_program(src);
  EXPECT_EQ(parse_program(pretty_print(p)), p) << pretty_print(p);
}

TEST(Evaluate, GroundFormulas) {
  Program p = parse_program(kSmall);
  Interpretation I;
  I.atoms["p(a)"] = true;
  I.atoms["q(a)"] = false;
  I.functions["f(a)"] = Rational(3, 2);
  EXPECT_TRUE(evaluate(parse_formula("p(a) & not q(a)", p), I));
  EXPECT_TRUE(evaluate(parse_formula("f(a) * 2 = 3", p), I));
  EXPECT_FALSE(evaluate(parse_formula("f(a) != 3/2", p), I));
  EXPECT_THROW(evaluate(parse_formula("f(b) > 0", p), I), Error);
}
