#pragma once

#include "aspmtqs/syntax/program.hpp"

#include <vector>

namespace aspmtqs {

/// {H} <- B  becomes  H <- B & not not H. Other rules are returned unchanged.
Rule desugar_choice(const Rule& rule);

/// Spatial frame axiom for an inertial constant whose last argument ranges over
/// `step_sort`:
///   functions:  {f(X1..Xn, S+1) = V} <- f(X1..Xn, S) = V
///   predicates: {p(X1..Xn, S+1)} <- p(X1..Xn, S)
/// Variables are fresh (_X1.., _S, _V). Throws Error when the constant has no
/// step argument.
std::vector<Rule> expand_frame_macro(const ConstantDecl& constant, const SortDecl& step_sort);

}  // namespace aspmtqs
