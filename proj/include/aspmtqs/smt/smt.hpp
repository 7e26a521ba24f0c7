#pragma once

#include "aspmtqs/smkernel/smkernel.hpp"

#include <chrono>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace aspmtqs::smt {

/// A parsed s-expression: an atom (symbol, numeral, keyword) or a list.
struct SExpr {
  bool is_list = false;
  std::string atom;
  std::vector<SExpr> items;

  std::string to_string() const;
};

/// Parses a sequence of s-expressions. Throws SolverError on unbalanced input.
std::vector<SExpr> parse_sexprs(std::string_view text);

struct SmtScript {
  std::string logic = "QF_NRA";
  /// (symbol, "Bool" | "Real") in first-use order.
  std::vector<std::pair<std::string, std::string>> declarations;
  std::vector<std::string> assertions;
  std::vector<std::string> commands = {"(check-sat)", "(get-model)"};
  /// Source instance key -> symbol, and its inverse.
  std::map<std::string, std::string> symbols;
  std::map<std::string, std::string> sources;
  /// Definitions of relation instances nothing else mentions; left out of the
  /// assertions and evaluated against the model afterwards.
  std::vector<Clause> pruned;

  /// Full script text: options, logic, declarations, assertions, commands.
  std::string text() const;
  /// Declarations and assertions only.
  std::string prelude() const;
};

struct EmitOptions {
  std::string logic = "QF_NRA";
  /// Drop predicate definitions whose instance no other assertion mentions.
  bool prune = true;
};

/// Deterministic translation of a completed theory plus extra assertions
/// (e.g. a negated query). Throws SolverError on constructs that have no
/// arithmetic reading (such as an unfolded object equality).
SmtScript emit_smtlib(const CompletedTheory& theory, std::span<const Formula> extra = {},
                      const EmitOptions& options = {});

/// Pruning mask: false for predicate definitions that neither another kept
/// clause nor any extra formula mentions (iterated to a fixpoint).
std::vector<bool> kept_clauses(const CompletedTheory& theory, std::span<const Formula> extra);

/// Deterministic symbol for a ground key: "rccEC(a, c, 1)" -> "rccEC_a_c_1".
std::string sanitize(std::string_view key);

/// SMT-LIB2 text of one formula, using (and extending) the script's symbol table.
std::string emit_formula(const Formula& f, SmtScript& script);
std::string emit_term(const Term& t, SmtScript& script);
/// Real literal: 3.0, (/ 1.0 2.0), (- 3.0).
std::string emit_number(const Rational& q);

enum class Verdict { Sat, Unsat, Unknown, Timeout, SolverError };
const char* to_string(Verdict v);

struct RealValue {
  Rational value;
  /// Set when the solver returned an irrational algebraic number; value is
  /// then a rational within 10^-precision of it.
  bool approximate = false;
  std::string decimal;
};

struct Model {
  /// Keyed by source instance key when the symbol is known, else by symbol.
  std::map<std::string, RealValue> reals;
  std::map<std::string, bool> booleans;

  bool has_approximations() const;
  /// Exact interpretation (approximations use their rational stand-in).
  Interpretation interpretation() const;
};

struct SmtResult {
  Verdict verdict = Verdict::Unknown;
  std::optional<Model> model;
  std::string diagnostics;
  double elapsed_ms = 0;
};

struct SolverConfig {
  std::string path;
  std::vector<std::string> args;  // empty: chosen from the executable name
  double timeout_s = 60;
  int precision = 20;
};

/// Solver path from the flag, then ASPMTQS_SOLVER, then z3 on PATH.
/// Throws SolverError when nothing executable is found.
std::string resolve_solver(const std::optional<std::string>& flag);

/// Writes the script to the solver, reads verdict and model. Timeouts are a
/// verdict; a missing executable or unreadable output throws SolverError.
SmtResult run_solver(const SmtScript& script, const SolverConfig& config);

/// One solver process answering many independent checks: the prelude is
/// asserted once and each entry is checked between push and pop. The timeout
/// covers the whole batch.
std::vector<Verdict> run_batch(const SmtScript& prelude,
                               const std::vector<std::vector<std::string>>& checks,
                               const SolverConfig& config);

/// Parses get-model output (define-fun lists, with or without a `model`
/// header, or get-value pairs). Throws SolverError naming the bad fragment.
Model parse_model(std::string_view text, const SmtScript* names = nullptr, int precision = 20);

enum class Entailment { Entailed, NotEntailed, Unknown };
const char* to_string(Entailment e);

struct EntailmentResult {
  Entailment entailment = Entailment::Unknown;
  SmtResult solver;  // the run on theory & not query; its model is a counterexample
};

/// theory |= query iff theory & not query is unsat.
EntailmentResult check_entailed(const CompletedTheory& theory, const Formula& query,
                                const SolverConfig& config, const EmitOptions& options = {});

/// Real roots of a polynomial (coefficients in ascending degree), each
/// approximated to within 10^-digits. Used for root-obj values.
std::vector<Rational> real_roots(std::vector<Rational> coefficients, int digits);

}  // namespace aspmtqs::smt
