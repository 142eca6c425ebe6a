#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace zsv {

// Exact arithmetic everywhere below n ~ 9; doubles are reserved for the
// large-election paths that explicitly opt out of exactness.
using Rational = mpq_class;

inline int sgn(const Rational& q) { return mpq_sgn(q.get_mpq_t()); }

// mpq_class(num, den) does not reduce; every fraction built from variable
// numerator/denominator pairs must go through here.
inline Rational ratio(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational rat_pow(const Rational& base, unsigned exp);

// Exact binomial coefficient as a Rational; zero outside 0 <= k <= n.
Rational binom(long n, long k);

// Multinomial (n; parts...) with sum(parts) == n required.
Rational multinomial(long n, std::initializer_list<long> parts);

// Accepts "a/b", "a", "-a/b" and plain decimals ("0.25" -> 1/4).
// Returns nullopt on anything else.
std::optional<Rational> parse_rational(const std::string& text);

// "a" when integral, else "a/b".
std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return mpq_get_d(q.get_mpq_t()); }

Rational rat_floor(const Rational& q);
Rational rat_ceil(const Rational& q);
Rational rat_abs(const Rational& q);

// The unique fraction with smallest denominator (then smallest numerator)
// strictly inside the open interval (lo, hi). Requires lo < hi.
// Used to recover exact rational roots from isolating intervals.
Rational simplest_between(const Rational& lo, const Rational& hi);

}  // namespace zsv
