#pragma once

#include "aspmtqs/ground/ground.hpp"
#include "aspmtqs/spatial/catalog.hpp"

#include <span>

namespace aspmtqs::spatial {

/// Parametric-function terms of a geometric object at the given extra
/// arguments (e.g. the step): x(a, 1), y(a, 1), r(a, 1) for a circle.
ParamTerms object_terms(const Program& program, const std::string& object,
                        const std::vector<Term>& extras);

/// Gives every spatial relation instance its polynomial meaning and asserts
/// the shape invariants of every object whose parametric functions exist.
///
/// Each relation instance Q(d) with a catalog overload gets the rule
/// Q(d) <- body(d); when user rules also derive Q(d), the constraint
/// false <- Q(d) & not body(d) keeps the instance tied to its geometry.
/// Throws SpatialError when an instance mentioned by a rule or a query has no
/// overload for its argument shapes.
void add_spatial_semantics(GroundProgram& gp, std::span<const Formula> queries = {});

}  // namespace aspmtqs::spatial
