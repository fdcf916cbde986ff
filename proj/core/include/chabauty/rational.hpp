#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace chabauty {

using Integer = mpz_class;
using Rational = mpq_class;

// Accepts "p", "-p", "p/q" with q != 0; surrounding whitespace is ignored.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

bool is_integer(const Rational& q);
Integer floor(const Rational& q);
Integer ceil(const Rational& q);
// Nearest integer, halves rounded up.
Integer round_nearest(const Rational& q);
Rational abs(const Rational& q);

// Rational bounds on sqrt(q), exact when q is the square of a rational.
// Otherwise the bracket has width at most 2^-40 relative to the denominator.
Rational sqrt_lower(const Rational& q);
Rational sqrt_upper(const Rational& q);

// Smallest non-negative integer m with m*m >= q.
Integer ceil_sqrt(const Rational& q);

Integer lcm_denominators_of(const Rational& a, const Integer& acc);

}  // namespace chabauty
