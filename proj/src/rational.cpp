#include "zsv/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace zsv {

Rational rat_pow(const Rational& base, unsigned exp) {
  Rational out(1);
  Rational b = base;
  unsigned e = exp;
  while (e > 0) {
    if (e & 1u) out *= b;
    b *= b;
    e >>= 1u;
  }
  return out;
}

Rational binom(long n, long k) {
  if (k < 0 || n < 0 || k > n) return Rational(0);
  mpz_class z;
  mpz_bin_uiui(z.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return Rational(z);
}

Rational multinomial(long n, std::initializer_list<long> parts) {
  Rational out(1);
  long rest = n;
  for (long p : parts) {
    if (p < 0 || p > rest) return Rational(0);
    out *= binom(rest, p);
    rest -= p;
  }
  if (rest != 0) throw std::invalid_argument("multinomial: parts do not sum to n");
  return out;
}

std::optional<Rational> parse_rational(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::string s = text;
  // decimal form
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    size_t frac_len = s.size() - dot - 1;
    if (digits.empty() || frac_len == 0) return std::nullopt;
    std::string core = digits;
    if (core[0] == '-' || core[0] == '+') core = core.substr(1);
    if (core.empty()) return std::nullopt;
    for (char c : core)
      if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    mpz_class num(digits, 10);
    mpz_class den(1);
    for (size_t i = 0; i < frac_len; ++i) den *= 10;
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  // "a" or "a/b"
  try {
    Rational q(s, 10);
    q.canonicalize();
    if (sgn(Rational(q.get_den())) == 0) return std::nullopt;
    return q;
  } catch (...) {
    return std::nullopt;
  }
}

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational rat_floor(const Rational& q) {
  mpz_class z;
  mpz_fdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(z);
}

Rational rat_ceil(const Rational& q) {
  mpz_class z;
  mpz_cdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(z);
}

Rational rat_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

namespace {

// Stern-Brocot descent on the open interval; both endpoints >= 0.
Rational simplest_nonneg(const Rational& lo, const Rational& hi) {
  Rational fl = rat_floor(lo);
  Rational candidate = fl + 1;
  if (candidate < hi) return candidate;  // an integer sits inside
  if (lo == fl) {
    // interval (k, hi) with hi <= k+1: simplest is k + 1/q for minimal q
    Rational inv = 1 / (hi - fl);
    Rational q = rat_floor(inv) + 1;
    return fl + 1 / q;
  }
  Rational inner = simplest_nonneg(1 / (hi - fl), 1 / (lo - fl));
  return fl + 1 / inner;
}

}  // namespace

Rational simplest_between(const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) throw std::invalid_argument("simplest_between: empty interval");
  if (lo < 0 && hi > 0) return Rational(0);
  if (hi <= 0) return -simplest_nonneg(-hi, -lo);
  return simplest_nonneg(lo, hi);
}

}  // namespace zsv
