#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace moser {

using Rational = mpq_class;

// Parses "p", "-p" or "p/q" into a canonical rational. Rejects everything else.
std::optional<Rational> parse_rational(const std::string& token);

// Canonical form: "p" when the denominator is 1, otherwise "p/q" with q > 0.
std::string format_rational(const Rational& r);

// Exact square root when r is the square of a rational, nullopt otherwise.
std::optional<Rational> rational_sqrt(const Rational& r);

double to_double(const Rational& r);

}  // namespace moser
