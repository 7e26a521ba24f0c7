#pragma once

#include "aspmtqs/syntax/formula.hpp"

#include <map>
#include <string>

namespace aspmtqs {

/// Truth values of ground atoms and values of ground function applications,
/// keyed by their printed form, e.g. "p(a, 1)" and "x(a)".
struct Interpretation {
  std::map<std::string, bool> atoms;
  std::map<std::string, Rational> functions;
};

/// Printed key of a ground application after evaluating numeric arguments.
std::string ground_key(const std::string& name, const std::vector<Term>& args,
                       const Interpretation& interp);

/// Exact evaluation of ground terms and formulas. Throws Error on variables or
/// on symbols the interpretation does not cover.
Rational evaluate(const Term& term, const Interpretation& interp);
bool evaluate(const Formula& formula, const Interpretation& interp);

}  // namespace aspmtqs
