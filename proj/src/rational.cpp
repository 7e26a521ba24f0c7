#include "aspmtqs/rational.hpp"

#include "aspmtqs/error.hpp"

#include <cctype>

namespace aspmtqs {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  Rational value;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    mpz_class d{std::string(den)};
    if (d == 0) return std::nullopt;
    value = Rational(mpz_class(std::string(num)), d);
    value.canonicalize();
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto whole = text.substr(0, dot);
    auto frac = text.substr(dot + 1);
    if (!all_digits(whole) || !all_digits(frac)) return std::nullopt;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    value = Rational(mpz_class(std::string(whole) + std::string(frac)), scale);
    value.canonicalize();
  } else {
    if (!all_digits(text)) return std::nullopt;
    value = Rational(mpz_class(std::string(text)));
  }
  if (negative) value = -value;
  return value;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_decimal(const Rational& q, int digits) {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  mpz_class scaled = q.get_num() * scale / q.get_den();  // truncates towards zero
  bool negative = scaled < 0 || (scaled == 0 && q < 0);
  mpz_class magnitude = abs(scaled);
  std::string body = magnitude.get_str();
  if (digits > 0) {
    if (body.size() <= static_cast<std::size_t>(digits))
      body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
    body.insert(body.size() - static_cast<std::size_t>(digits), ".");
  }
  return negative ? "-" + body : body;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

ParseError::ParseError(Kind kind, SourceLocation where, const std::string& message)
    : Error(std::to_string(where.line) + ":" + std::to_string(where.column) + ": " +
            to_string(kind) + " error: " + message),
      kind_(kind),
      where_(where),
      detail_(message) {}

const char* to_string(ParseError::Kind kind) {
  switch (kind) {
    case ParseError::Kind::Lexical: return "lexical";
    case ParseError::Kind::Syntax: return "syntax";
    case ParseError::Kind::Undeclared: return "undeclared-name";
    case ParseError::Kind::Arity: return "arity";
    case ParseError::Kind::Sort: return "sort";
    case ParseError::Kind::Declaration: return "declaration";
  }
  return "unknown";
}

}  // namespace aspmtqs
