#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace aspmtqs {

/// Exact arbitrary-precision rational number.
using Rational = mpq_class;

/// Parses "3", "-2", "1.25" or "1/3". Returns nullopt on malformed text.
std::optional<Rational> parse_rational(std::string_view text);

/// Canonical text: "3", "-2", "1/3".
std::string to_string(const Rational& q);

/// Decimal text rounded towards zero to `digits` fractional digits.
std::string to_decimal(const Rational& q, int digits);

bool is_integer(const Rational& q);

}  // namespace aspmtqs
