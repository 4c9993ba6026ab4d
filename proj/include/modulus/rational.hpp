#pragma once

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace modulus {

using Rational = mpq_class;
using Integer = mpz_class;

// Canonical text form: "p" when the denominator is 1, "p/q" otherwise.
std::string to_string(const Rational& r);

// Accepts "p" or "p/q" with optional sign; throws UsageError on anything else
// (including a zero denominator).
Rational parse_rational(std::string_view text);

inline Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

} // namespace modulus
