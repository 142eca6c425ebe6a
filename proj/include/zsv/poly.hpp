#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "zsv/rational.hpp"

namespace zsv {

// Dense univariate polynomial over exact rationals, coefficient c[i] on x^i.
// Small degrees only (<= population size), so no effort is spent on
// asymptotics; what matters here is exactness of sign decisions.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly constant(const Rational& v) { return Poly({v}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const Rational& coeff(int i) const;
  const std::vector<Rational>& coeffs() const { return c_; }

  Rational eval(const Rational& x) const;
  double eval_double(double x) const;

  Poly derivative() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly scaled(const Rational& k) const;

  // Euclidean division; rhs must be nonzero.
  static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);

  void add_term(int power, const Rational& v);

 private:
  void trim();
  std::vector<Rational> c_;
};

Poly poly_gcd(Poly a, Poly b);
Poly square_free_part(const Poly& p);

// An isolating interval for one distinct real root. When `exact` the root
// itself was identified and lo == hi == root.
struct RootInterval {
  Rational lo, hi;
  bool exact = false;
};

// All distinct real roots of p in the open interval (lo, hi), each isolated.
// Requires p(lo) != 0 and p(hi) != 0.
std::vector<RootInterval> isolate_real_roots(const Poly& p, const Rational& lo,
                                             const Rational& hi);

// Shrinks a (non-exact) isolating interval by sign-change bisection until
// hi - lo <= width. The interval must bracket a sign change of p.
RootInterval refine_root(const Poly& p, RootInterval iv, const Rational& width);

// Tries to identify the root inside an isolating interval as an exact
// rational (the simplest fraction in the interval, verified by evaluation).
std::optional<Rational> find_exact_root(const Poly& p, const RootInterval& iv);

// 1 + max |c_i| / |c_deg|; all real roots lie in (-B, B).
Rational cauchy_bound(const Poly& p);

}  // namespace zsv
