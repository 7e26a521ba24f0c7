#pragma once

#include "aspmtqs/smkernel/smkernel.hpp"
#include "aspmtqs/smt/smt.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace aspmtqs::cli {

/// An error tagged with the pipeline phase that raised it.
class PhaseError : public Error {
 public:
  PhaseError(std::string phase, const std::string& message)
      : Error(phase + ": " + message), phase_(std::move(phase)) {}
  const std::string& phase() const noexcept { return phase_; }

 private:
  std::string phase_;
};

struct PhaseTimings {
  double parse = 0;
  double ground = 0;
  double complete = 0;
  double solve = 0;
};

struct Compilation {
  /// Declarations after parsing the program and the queries.
  Program program;
  /// Ground rules including the spatial definitions and invariants.
  GroundProgram ground;
  CnfTheory cnf;
  CompletedTheory theory;
  /// Ground queries, in the order given.
  std::vector<Formula> queries;
  std::vector<std::string> warnings;
  PhaseTimings timings;
};

struct CompileOptions {
  /// Stop after grounding (no completion); used by the oracle.
  bool complete = true;
};

/// parse -> desugar -> ground -> f-plain/av-separated checks -> spatial
/// semantics -> Clark normal form -> tightness -> completion. Errors come back
/// as PhaseError.
Compilation compile(std::string_view source, std::span<const std::string> queries = {},
                    const CompileOptions& options = {});
Compilation compile(Program program, std::span<const std::string> queries = {},
                    const CompileOptions& options = {});

/// SMT script for the compiled theory plus extra assertions. With `symmetry`,
/// adds the similarity-normalising constraints the theory admits.
smt::SmtScript script_for(const Compilation& c, std::span<const Formula> extra = {},
                          const smt::EmitOptions& options = {}, bool symmetry = true);

/// Entailment of a formula (typically one of c.queries) by the compiled theory.
smt::EntailmentResult entails(const Compilation& c, const Formula& query, const smt::SolverConfig& config,
                              bool symmetry = true);

/// Truth values of relation instances left out of the SMT script, evaluated
/// on the model. Skipped when the model holds approximations.
void fill_pruned(const smt::SmtScript& script, smt::Model& model);

}  // namespace aspmtqs::cli
