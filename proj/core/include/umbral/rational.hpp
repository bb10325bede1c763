#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace umbral {

/// Arbitrary-precision rational, always kept in canonical form.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p", "-p" or "p/q" (whitespace tolerated around the parts).
Rational parse_rational(std::string_view text);

/// Renders as "p" when the denominator is one, "p/q" otherwise.
std::string to_string(const Rational& value);

Rational factorial(unsigned n);
Rational binomial(unsigned n, unsigned k);
Rational pow(const Rational& base, unsigned exponent);

bool is_integer(const Rational& value);

}  // namespace umbral
