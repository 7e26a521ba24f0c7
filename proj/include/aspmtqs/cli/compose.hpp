#pragma once

#include "aspmtqs/smt/smt.hpp"
#include "aspmtqs/spatial/geometry.hpp"

#include <optional>
#include <string>
#include <vector>

namespace aspmtqs::cli {

struct CompositionOptions {
  /// Base set of candidate relations (rcc8, rcc5, ia, ra, size); empty picks
  /// the first base set containing both relations.
  std::string base;
  /// Object shape; defaults to circles for rcc8/rcc5/size, intervals for ia
  /// and rectangles for ra.
  std::optional<spatial::Shape> shape;
  int jobs = 1;
  smt::SolverConfig solver;
};

struct CompositionCandidate {
  std::string relation;
  smt::Verdict verdict = smt::Verdict::Unknown;
  /// Geometry of the three objects when sat.
  std::vector<spatial::Geometry> witness;
  /// eval_relation holds for A(o1,o2), B(o2,o3) and R(o1,o3) on the witness.
  bool confirmed = false;
  std::string note;
};

struct CompositionResult {
  std::string base;
  spatial::Shape shape;
  std::vector<CompositionCandidate> candidates;

  /// Candidates with a sat verdict: the composition entry.
  std::vector<std::string> members() const;
  /// Every candidate settled (sat or unsat) and every member confirmed.
  bool complete() const;
};

/// Composition of A and B: the base relations R for which A(o1,o2) & B(o2,o3)
/// & R(o1,o3) is satisfiable. Candidate checks run on up to `jobs` solver
/// processes at once. Throws Error on unknown names or mixed catalogs.
CompositionResult compose(const std::string& a, const std::string& b, const CompositionOptions& options);

}  // namespace aspmtqs::cli
