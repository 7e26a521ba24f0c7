#include "aspmtqs/error.hpp"
#include "aspmtqs/smt/smt.hpp"

#include <cctype>

namespace aspmtqs::smt {

std::string SExpr::to_string() const {
  if (!is_list) return atom;
  std::string out = "(";
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? " " : "") + items[i].to_string();
  return out + ")";
}

std::vector<SExpr> parse_sexprs(std::string_view text) {
  std::vector<SExpr> stack(1);
  stack.front().is_list = true;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == ';') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (c == '(') {
      stack.emplace_back();
      stack.back().is_list = true;
      ++i;
    } else if (c == ')') {
      if (stack.size() == 1) throw SolverError("unbalanced ')' in solver output at offset " + std::to_string(i));
      SExpr done = std::move(stack.back());
      stack.pop_back();
      stack.back().items.push_back(std::move(done));
      ++i;
    } else if (c == '"' || c == '|') {
      std::size_t j = i + 1;
      while (j < text.size() && text[j] != c) j += (c == '"' && text[j] == '\\') ? 2 : 1;
      if (j >= text.size()) throw SolverError("unterminated literal in solver output");
      SExpr a;
      a.atom = std::string(text.substr(i, j + 1 - i));
      stack.back().items.push_back(std::move(a));
      i = j + 1;
    } else {
      std::size_t j = i;
      while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) && text[j] != '(' &&
             text[j] != ')' && text[j] != ';')
        ++j;
      SExpr a;
      a.atom = std::string(text.substr(i, j - i));
      stack.back().items.push_back(std::move(a));
      i = j;
    }
  }
  if (stack.size() != 1) throw SolverError("unbalanced '(' in solver output");
  return std::move(stack.front().items);
}

}  // namespace aspmtqs::smt
