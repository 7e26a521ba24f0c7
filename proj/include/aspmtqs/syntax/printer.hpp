#pragma once

#include "aspmtqs/syntax/program.hpp"

#include <string>

namespace aspmtqs {

std::string to_string(const Term& term);
std::string to_string(const Formula& formula);
/// One rule in surface syntax, terminated by '.'.
std::string to_string(const Rule& rule);
/// Whole program in surface syntax; parse_program(pretty_print(p)) == p.
std::string pretty_print(const Program& program);

}  // namespace aspmtqs
