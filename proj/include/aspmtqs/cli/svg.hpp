#pragma once

#include "aspmtqs/smt/smt.hpp"

namespace aspmtqs::cli {

/// SVG 1.1 drawing of every geometric object whose parametric values at
/// `extras` (e.g. the step) appear in the model: one labelled shape per
/// object, viewBox fitted with a 10% margin, approximate values dashed.
/// Throws Error("no model") when nothing can be drawn and SpatialError for
/// objects of a sort that has no planar drawing (intervals).
std::string render_svg(const Program& program, const smt::Model& model,
                       const std::vector<Term>& extras = {});

}  // namespace aspmtqs::cli
