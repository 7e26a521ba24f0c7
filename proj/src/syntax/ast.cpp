#include "aspmtqs/syntax/formula.hpp"
#include "aspmtqs/syntax/term.hpp"

namespace aspmtqs {

Term Term::object(std::string name) {
  return Term(std::make_shared<const TermNode>(TermNode{ObjectTerm{std::move(name)}}));
}

Term Term::number(Rational value) {
  return Term(std::make_shared<const TermNode>(TermNode{NumberTerm{std::move(value)}}));
}

Term Term::variable(std::string name, std::string sort) {
  return Term(std::make_shared<const TermNode>(
      TermNode{VariableTerm{std::move(name), std::move(sort)}}));
}

Term Term::apply(std::string function, std::vector<Term> args) {
  return Term(std::make_shared<const TermNode>(
      TermNode{ApplyTerm{std::move(function), std::move(args)}}));
}

Term Term::add(Term lhs, Term rhs) {
  return Term(std::make_shared<const TermNode>(
      TermNode{ArithTerm{ArithOp::Add, {std::move(lhs), std::move(rhs)}}}));
}

Term Term::sub(Term lhs, Term rhs) {
  return Term(std::make_shared<const TermNode>(
      TermNode{ArithTerm{ArithOp::Sub, {std::move(lhs), std::move(rhs)}}}));
}

Term Term::mul(Term lhs, Term rhs) {
  return Term(std::make_shared<const TermNode>(
      TermNode{ArithTerm{ArithOp::Mul, {std::move(lhs), std::move(rhs)}}}));
}

Term Term::neg(Term operand) {
  return Term(std::make_shared<const TermNode>(
      TermNode{ArithTerm{ArithOp::Neg, {std::move(operand)}}}));
}

namespace {

struct TermEquals {
  bool operator()(const ObjectTerm& a, const ObjectTerm& b) const { return a.name == b.name; }
  bool operator()(const NumberTerm& a, const NumberTerm& b) const { return a.value == b.value; }
  bool operator()(const VariableTerm& a, const VariableTerm& b) const {
    return a.name == b.name && a.sort == b.sort;
  }
  bool operator()(const ApplyTerm& a, const ApplyTerm& b) const {
    return a.function == b.function && a.args == b.args;
  }
  bool operator()(const ArithTerm& a, const ArithTerm& b) const {
    return a.op == b.op && a.operands == b.operands;
  }
  template <class A, class B>
  bool operator()(const A&, const B&) const {
    return false;
  }
};

struct FormulaEquals {
  bool operator()(const AtomFormula& a, const AtomFormula& b) const {
    return a.predicate == b.predicate && a.args == b.args;
  }
  bool operator()(const CompareFormula& a, const CompareFormula& b) const {
    return a.op == b.op && a.lhs == b.lhs && a.rhs == b.rhs;
  }
  bool operator()(const AndFormula& a, const AndFormula& b) const { return a.items == b.items; }
  bool operator()(const OrFormula& a, const OrFormula& b) const { return a.items == b.items; }
  bool operator()(const ImpliesFormula& a, const ImpliesFormula& b) const {
    return a.antecedent == b.antecedent && a.consequent == b.consequent;
  }
  bool operator()(const FalseFormula&, const FalseFormula&) const { return true; }
  template <class A, class B>
  bool operator()(const A&, const B&) const {
    return false;
  }
};

}  // namespace

bool Term::operator==(const Term& other) const {
  if (node_ == other.node_) return true;
  return std::visit(TermEquals{}, node_->value, other.node_->value);
}

Formula Formula::atom(std::string predicate, std::vector<Term> args) {
  return Formula(std::make_shared<const FormulaNode>(
      FormulaNode{AtomFormula{std::move(predicate), std::move(args)}}));
}

Formula Formula::compare(CompareOp op, Term lhs, Term rhs) {
  return Formula(std::make_shared<const FormulaNode>(
      FormulaNode{CompareFormula{op, std::move(lhs), std::move(rhs)}}));
}

Formula Formula::equal(Term lhs, Term rhs) {
  return compare(CompareOp::Eq, std::move(lhs), std::move(rhs));
}

Formula Formula::conj(std::vector<Formula> items) {
  return Formula(std::make_shared<const FormulaNode>(FormulaNode{AndFormula{std::move(items)}}));
}

Formula Formula::disj(std::vector<Formula> items) {
  return Formula(std::make_shared<const FormulaNode>(FormulaNode{OrFormula{std::move(items)}}));
}

Formula Formula::implies(Formula antecedent, Formula consequent) {
  return Formula(std::make_shared<const FormulaNode>(
      FormulaNode{ImpliesFormula{std::move(antecedent), std::move(consequent)}}));
}

Formula Formula::falsity() {
  static const Formula bottom(std::make_shared<const FormulaNode>(FormulaNode{FalseFormula{}}));
  return bottom;
}

Formula Formula::truth() {
  static const Formula top = implies(falsity(), falsity());
  return top;
}

Formula Formula::negate(Formula f) { return implies(std::move(f), falsity()); }

Formula Formula::iff(Formula a, Formula b) {
  return conj({implies(a, b), implies(b, a)});
}

bool Formula::is_falsity() const { return std::holds_alternative<FalseFormula>(node_->value); }

bool Formula::is_truth() const {
  auto* imp = as<ImpliesFormula>();
  return imp && imp->antecedent.is_falsity() && imp->consequent.is_falsity();
}

const Formula* Formula::negated() const {
  auto* imp = as<ImpliesFormula>();
  if (!imp || !imp->consequent.is_falsity() || imp->antecedent.is_falsity()) return nullptr;
  return &imp->antecedent;
}

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  return std::visit(FormulaEquals{}, node_->value, other.node_->value);
}

const char* to_string(CompareOp op) {
  switch (op) {
    case CompareOp::Lt: return "<";
    case CompareOp::Le: return "<=";
    case CompareOp::Eq: return "=";
    case CompareOp::Ge: return ">=";
    case CompareOp::Gt: return ">";
  }
  return "?";
}

}  // namespace aspmtqs
