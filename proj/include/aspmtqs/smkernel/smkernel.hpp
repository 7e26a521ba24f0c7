#pragma once

#include "aspmtqs/ground/ground.hpp"
#include "aspmtqs/syntax/evaluator.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace aspmtqs {

/// Vertices are intensional instance keys; (c, d) means the definition of c
/// depends positively on d.
struct DependencyGraph {
  std::vector<std::string> vertices;
  std::set<std::pair<std::string, std::string>> edges;

  /// DOT digraph text.
  std::string to_dot() const;
};

struct Tightness {
  bool tight = true;
  /// A cycle c1 -> c2 -> ... -> c1 (first vertex not repeated) when not tight.
  std::vector<std::string> cycle;
};

struct DefinitionBody {
  Formula guard;
  /// Function definitions: the value term. A free-value choice carries the
  /// instance itself and free_value = true.
  std::optional<Term> value;
  bool free_value = false;
};

struct Definition {
  GroundInstance head;
  std::vector<DefinitionBody> bodies;
};

struct CnfTheory {
  /// One entry per intensional instance, possibly with no bodies.
  std::vector<Definition> definitions;
  std::vector<Formula> constraints;
  DependencyGraph graph;
};

struct Clause {
  Formula formula;
  /// Key of the instance this clause defines; empty for constraints.
  std::string defines;
};

struct CompletedTheory {
  std::vector<Clause> clauses;
  std::vector<GroundInstance> intensionals;
  std::vector<std::string> warnings;
};

DependencyGraph build_dependency_graph(const GroundProgram& gp);
Tightness is_tight(const DependencyGraph& graph);

/// Throws CompletionError when a rule head is not intensional.
CnfTheory to_clark_normal_form(const GroundProgram& gp);

/// Throws CompletionError with the cycle when the graph is not acyclic.
CompletedTheory complete(const CnfTheory& cnf);

/// Truth/falsity absorption and double-negation removal.
Formula simplify(const Formula& f);

/// F* of the stable model operator, with intensional constants renamed by `hat`.
Formula star_transform(const Formula& f, const std::map<std::string, std::string>& hat);

struct OracleOptions {
  /// Candidate values per function instance key.
  std::map<std::string, std::vector<Rational>> value_domains;
  /// Candidates for instances not listed; empty means program literals plus 0 and 1.
  std::vector<Rational> default_values;
  /// Upper bound on the number of interpretations examined.
  std::size_t bound = std::size_t{1} << 20;
  /// Hold function constants fixed when looking for smaller interpretations.
  bool fixed_functions = false;
};

/// Stable models by direct enumeration of the stable model operator. Intensional
/// predicates never mentioned by a rule appear as false. Models are sorted.
/// Throws Error when the search space exceeds the bound.
std::vector<Interpretation> brute_force_stable_models(const GroundProgram& gp,
                                                      const OracleOptions& options = {});

/// Classical models of a completed theory over the same kind of value domains.
std::vector<Interpretation> enumerate_models(const CompletedTheory& theory,
                                             const OracleOptions& options = {});

/// Canonical one-line rendering, e.g. "{p(a), x(a)=1}" (false atoms omitted).
std::string to_string(const Interpretation& model);

}  // namespace aspmtqs
