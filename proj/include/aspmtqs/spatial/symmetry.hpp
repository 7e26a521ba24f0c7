#pragma once

#include "aspmtqs/smkernel/smkernel.hpp"

#include <span>

namespace aspmtqs::spatial {

struct SymmetryBreaking {
  /// Normalising constraints; satisfiability of theory & extra is unchanged by adding them.
  std::vector<Formula> constraints;
  bool translation_x = false;
  bool translation_y = false;
  bool translation_line = false;  // interval endpoints
  bool rotation = false;
  bool scaling = false;
};

/// Detects which similarity transformations of the plane leave every
/// arithmetic comparison of `theory` and `extra` unchanged (checked as exact
/// polynomial identities over the parametric function instances) and returns
/// constraints fixing the corresponding degrees of freedom: one point at the
/// origin, a second point on the positive x axis, one radius equal to 1.
SymmetryBreaking break_symmetries(const Program& program, const CompletedTheory& theory,
                                  std::span<const Formula> extra = {});

}  // namespace aspmtqs::spatial
