#pragma once

#include "aspmtqs/error.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace aspmtqs::detail {

struct Token {
  enum class Kind { Identifier, Variable, Number, Punct, End };

  Kind kind = Kind::End;
  std::string text;
  SourceLocation where;

  bool is(std::string_view punct) const { return kind == Kind::Punct && text == punct; }
  bool is_word(std::string_view word) const { return kind == Kind::Identifier && text == word; }
};

/// Splits program text into tokens. `%` starts a comment running to end of line.
std::vector<Token> tokenize(std::string_view text);

}  // namespace aspmtqs::detail
