#include "lexer.hpp"

#include <array>
#include <cctype>

namespace aspmtqs::detail {

namespace {

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

constexpr std::array<std::string_view, 25> kPunct = {
    ":-", "::", "..", "<-", "->", "<=", ">=", "!=", ".", ",", ";", "(", ")",
    "{",  "}",  "<",  ">",  "=",  "+",  "-",  "*",  "&", "|", "/", ":"};

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '%') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    SourceLocation where{line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      std::string word(text.substr(i, j - i));
      bool variable = std::isupper(static_cast<unsigned char>(c)) || c == '_';
      if (c == '_' && (word.size() < 2 || !std::isupper(static_cast<unsigned char>(word[1]))))
        throw ParseError(ParseError::Kind::Lexical, where, "identifier '" + word +
                                                               "' may not start with '_'");
      out.push_back({variable ? Token::Kind::Variable : Token::Kind::Identifier, word, where});
      advance(j - i);
      continue;
    }
    if (digit(c)) {
      std::size_t j = i;
      while (j < text.size() && digit(text[j])) ++j;
      if (j + 1 < text.size() && text[j] == '.' && digit(text[j + 1])) {
        ++j;
        while (j < text.size() && digit(text[j])) ++j;
      } else if (j + 1 < text.size() && text[j] == '/' && digit(text[j + 1])) {
        ++j;
        while (j < text.size() && digit(text[j])) ++j;
      }
      out.push_back({Token::Kind::Number, std::string(text.substr(i, j - i)), where});
      advance(j - i);
      continue;
    }
    bool matched = false;
    for (auto p : kPunct) {
      if (text.substr(i, p.size()) == p) {
        out.push_back({Token::Kind::Punct, std::string(p), where});
        advance(p.size());
        matched = true;
        break;
      }
    }
    if (!matched)
      throw ParseError(ParseError::Kind::Lexical, where,
                       std::string("unexpected character '") + c + "'");
  }
  out.push_back({Token::Kind::End, "", {line, col}});
  return out;
}

}  // namespace aspmtqs::detail
