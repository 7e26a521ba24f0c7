#pragma once

#include "aspmtqs/rational.hpp"

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace aspmtqs {

struct TermNode;

/// Immutable term tree with value semantics; copies share structure.
class Term {
 public:
  static Term object(std::string name);
  static Term number(Rational value);
  static Term number(long value) { return number(Rational(value)); }
  static Term variable(std::string name, std::string sort);
  static Term apply(std::string function, std::vector<Term> args);
  static Term add(Term lhs, Term rhs);
  static Term sub(Term lhs, Term rhs);
  static Term mul(Term lhs, Term rhs);
  static Term neg(Term operand);

  const TermNode& node() const { return *node_; }
  template <class T>
  const T* as() const;

  /// Structural equality.
  bool operator==(const Term& other) const;
  bool same_node(const Term& other) const { return node_ == other.node_; }

 private:
  explicit Term(std::shared_ptr<const TermNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const TermNode> node_;
};

struct ObjectTerm {
  std::string name;
};

struct NumberTerm {
  Rational value;
};

/// A variable carries its sort so rewrites can mint fresh variables without a symbol table.
struct VariableTerm {
  std::string name;
  std::string sort;
};

struct ApplyTerm {
  std::string function;
  std::vector<Term> args;
};

enum class ArithOp { Add, Sub, Mul, Neg };

struct ArithTerm {
  ArithOp op;
  std::vector<Term> operands;  // two operands, or one for Neg
};

struct TermNode {
  std::variant<ObjectTerm, NumberTerm, VariableTerm, ApplyTerm, ArithTerm> value;
};

template <class T>
const T* Term::as() const {
  return std::get_if<T>(&node_->value);
}

}  // namespace aspmtqs
