#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace fivesq {

using Integer = mpz_class;
using Rational = mpq_class;

inline Integer to_integer(std::uint64_t v) { return Integer{static_cast<unsigned long>(v)}; }
inline Integer to_integer(std::int64_t v) { return Integer{static_cast<long>(v)}; }

// floor(sqrt(v)) for v >= 0.
Integer isqrt(const Integer& v);

// floor(a / b) with the sign convention of mathematics, b != 0.
Integer floor_div(const Integer& a, const Integer& b);

Integer floor(const Rational& q);

// Parses "n/d" or "n" into a canonical rational. Throws InvalidArgument.
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& q);

// Nearest double, rounding toward +infinity so the result bounds |q| from above
// when q >= 0.
double upper_double(const Rational& q);

}  // namespace fivesq
