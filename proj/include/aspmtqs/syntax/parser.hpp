#pragma once

#include "aspmtqs/syntax/program.hpp"

#include <string_view>

namespace aspmtqs {

/// Parses `.aspmtqs` program text. Throws ParseError carrying line and column.
///
/// Constants named after relations of an included theory are declared
/// automatically on first use (over the `geometric` sort) and are always
/// intensional. Undeclared parametric functions (x, y, r, ...) applied to a
/// single geometric object are declared automatically as exogenous reals.
Program parse_program(std::string_view text);

/// Parses a ground formula against the declarations of `program`, e.g. an
/// entailment query. Relations and parametric functions it mentions are
/// auto-declared into `program` under the same rules as parse_program.
Formula parse_formula(std::string_view text, Program& program);

}  // namespace aspmtqs
