#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace opz {

using Rational = mpq_class;

/// Parses "p/q", an integer, or a decimal literal ("-1.5", "0.05", "1e-2")
/// into an exact rational. Decimal input is converted exactly, so "0.05" is 1/20.
/// Throws std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& q);

/// Nearest double (round-to-nearest via GMP's truncation plus a correction step).
double to_double(const Rational& q);

/// Exact value of a finite double.
Rational from_double(double x);

Rational pow(const Rational& base, int exponent);

} // namespace opz
