#pragma once

#include "aspmtqs/syntax/term.hpp"

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace aspmtqs {

struct FormulaNode;

enum class CompareOp { Lt, Le, Eq, Ge, Gt };

const char* to_string(CompareOp op);

/// Immutable connective tree. Negation is stored as F -> false and truth as
/// false -> false; there are no separate nodes for either.
class Formula {
 public:
  static Formula atom(std::string predicate, std::vector<Term> args = {});
  static Formula compare(CompareOp op, Term lhs, Term rhs);
  static Formula equal(Term lhs, Term rhs);
  static Formula conj(std::vector<Formula> items);
  static Formula disj(std::vector<Formula> items);
  static Formula implies(Formula antecedent, Formula consequent);
  static Formula falsity();
  static Formula truth();
  static Formula negate(Formula f);
  /// (a -> b) & (b -> a), sharing the operand nodes.
  static Formula iff(Formula a, Formula b);

  const FormulaNode& node() const { return *node_; }
  template <class T>
  const T* as() const;

  bool is_falsity() const;
  bool is_truth() const;
  /// Matches F -> false (but not truth); returns F.
  const Formula* negated() const;

  bool operator==(const Formula& other) const;
  bool same_node(const Formula& other) const { return node_ == other.node_; }

 private:
  explicit Formula(std::shared_ptr<const FormulaNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const FormulaNode> node_;
};

struct AtomFormula {
  std::string predicate;
  std::vector<Term> args;
};

struct CompareFormula {
  CompareOp op;
  Term lhs;
  Term rhs;
};

struct AndFormula {
  std::vector<Formula> items;
};

struct OrFormula {
  std::vector<Formula> items;
};

struct ImpliesFormula {
  Formula antecedent;
  Formula consequent;
};

struct FalseFormula {};

struct FormulaNode {
  std::variant<AtomFormula, CompareFormula, AndFormula, OrFormula, ImpliesFormula, FalseFormula>
      value;
};

template <class T>
const T* Formula::as() const {
  return std::get_if<T>(&node_->value);
}

}  // namespace aspmtqs
