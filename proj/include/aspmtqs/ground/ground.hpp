#pragma once

#include "aspmtqs/syntax/program.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace aspmtqs {

/// A ground constant instance such as p(a, 1) or x(a, 0).
struct GroundInstance {
  std::string constant;
  std::vector<Term> args;  // objects or numbers
  bool predicate = true;

  /// Printed form, e.g. "p(a, 1)"; also the key used by Interpretation.
  std::string key() const;
  Term term() const;
  Formula atom() const;
  bool operator==(const GroundInstance& other) const { return key() == other.key(); }
};

struct GroundRule {
  Rule rule;
  /// Real variable kept as the value of a choice head f(d) = V, if any.
  std::optional<VariableDecl> free_value;
};

struct GroundProgram {
  /// Declarations of the source program (rules cleared).
  Program declarations;
  /// Sorted by printed text, without duplicates.
  std::vector<GroundRule> rules;
  /// Every ground instance of every intensional constant, each once.
  std::vector<GroundInstance> intensionals;
  std::vector<std::string> warnings;

  /// The ground rules as an ordinary program (free value variables declared,
  /// inertial declarations dropped since their axioms are already ground).
  Program to_program() const;
};

struct Violation {
  std::string message;
  SourceLocation where;
};

/// Atomic formulas mentioning an intensional function f other than as f(t) = u
/// with t and u free of f.
std::vector<Violation> check_f_plain(const Program& program);

/// Equality chains linking an argument variable of one intensional function to
/// the value variable of another.
std::vector<Violation> check_av_separated(const Program& program);

/// Choice desugaring plus one frame axiom per inertial constant; the rules the
/// checks and the grounder work on.
Program prepare(const Program& program);

/// Instantiates variables over finite sorts, folds arithmetic, drops instances
/// whose arguments leave their sort, and eliminates real variables fixed by a
/// top-level body equality. Throws GroundError on unsafe real variables,
/// empty sorts and real-sorted constant arguments. Expects prepared input.
GroundProgram ground(const Program& program);

/// Folds a variable-free formula (e.g. a query) the same way rule bodies are.
Formula ground_formula(const Formula& formula, const Program& program);

/// Key of a ground atom or application, as GroundInstance::key().
std::string instance_key(const Formula& atom);
std::string instance_key(const Term& application);

/// Intensional instances mentioned in a ground formula (atoms and applications).
void collect_instances(const Formula& f, std::vector<GroundInstance>& out);
void collect_instances(const Term& t, std::vector<GroundInstance>& out);

}  // namespace aspmtqs
