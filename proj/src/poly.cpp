#include "zsv/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace zsv {

namespace {
const Rational kZero(0);
}

const Rational& Poly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return kZero;
  return c_[i];
}

void Poly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

Rational Poly::eval(const Rational& x) const {
  Rational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double Poly::eval_double(double x) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + to_double(*it);
  return acc;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly();
  std::vector<Rational> d(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rational(static_cast<long>(i));
  return Poly(std::move(d));
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
  for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return Poly(std::move(r));
}

Poly Poly::operator-(const Poly& o) const {
  std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
  for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
  return Poly(std::move(r));
}

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly();
  std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return Poly(std::move(r));
}

Poly Poly::scaled(const Rational& k) const {
  std::vector<Rational> r = c_;
  for (auto& v : r) v *= k;
  return Poly(std::move(r));
}

void Poly::add_term(int power, const Rational& v) {
  if (power < 0) throw std::invalid_argument("negative power");
  if (static_cast<size_t>(power) >= c_.size()) c_.resize(power + 1, Rational(0));
  c_[power] += v;
  trim();
}

std::pair<Poly, Poly> Poly::divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::invalid_argument("poly division by zero");
  std::vector<Rational> rem = a.c_;
  int db = b.degree();
  if (a.degree() < db) return {Poly(), a};
  std::vector<Rational> quo(a.degree() - db + 1, Rational(0));
  for (int i = a.degree(); i >= db; --i) {
    if (sgn(rem[i]) == 0) continue;
    Rational f = rem[i] / b.c_[db];
    quo[i - db] = f;
    for (int j = 0; j <= db; ++j) rem[i - db + j] -= f * b.c_[j];
  }
  return {Poly(std::move(quo)), Poly(std::move(rem))};
}

Poly poly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = Poly::divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  // normalize to monic for stable downstream use
  return a.scaled(1 / a.coeff(a.degree()));
}

Poly square_free_part(const Poly& p) {
  if (p.degree() <= 1) return p;
  Poly g = poly_gcd(p, p.derivative());
  if (g.degree() <= 0) return p;
  return Poly::divmod(p, g).first;
}

namespace {

std::vector<Poly> sturm_chain(const Poly& p) {
  std::vector<Poly> chain;
  chain.push_back(p);
  chain.push_back(p.derivative());
  while (!chain.back().is_zero() && chain.back().degree() > 0) {
    Poly r = Poly::divmod(chain[chain.size() - 2], chain.back()).second;
    chain.push_back(r.scaled(Rational(-1)));
  }
  if (chain.back().is_zero()) chain.pop_back();
  return chain;
}

int variations_at(const std::vector<Poly>& chain, const Rational& x) {
  int var = 0;
  int prev = 0;
  for (const Poly& q : chain) {
    int s = sgn(q.eval(x));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++var;
    prev = s;
  }
  return var;
}

// distinct roots in the half-open interval (a, b]
int sturm_count(const std::vector<Poly>& chain, const Rational& a, const Rational& b) {
  return variations_at(chain, a) - variations_at(chain, b);
}

void isolate_rec(const Poly& q, const std::vector<Poly>& chain, const Rational& a,
                 const Rational& b, std::vector<RootInterval>& out, int depth) {
  if (depth > 512) throw std::runtime_error("root isolation failed to converge");
  int k = sturm_count(chain, a, b);
  if (k == 0) return;
  if (k == 1 && sgn(q.eval(b)) != 0) {
    out.push_back({a, b, false});
    return;
  }
  Rational m = (a + b) / 2;
  if (sgn(q.eval(m)) == 0) {
    out.push_back({m, m, true});
    // carve out an interval around the known root before recursing
    Rational eps = (b - a) / 4;
    while (true) {
      Rational lo = m - eps, hi = m + eps;
      if (lo > a && hi < b && sgn(q.eval(lo)) != 0 && sgn(q.eval(hi)) != 0 &&
          sturm_count(chain, lo, hi) == 1) {
        isolate_rec(q, chain, a, lo, out, depth + 1);
        isolate_rec(q, chain, hi, b, out, depth + 1);
        return;
      }
      eps /= 2;
    }
  }
  isolate_rec(q, chain, a, m, out, depth + 1);
  isolate_rec(q, chain, m, b, out, depth + 1);
}

}  // namespace

std::vector<RootInterval> isolate_real_roots(const Poly& p, const Rational& lo,
                                             const Rational& hi) {
  std::vector<RootInterval> out;
  if (p.is_zero()) throw std::invalid_argument("isolate_real_roots: zero polynomial");
  if (p.degree() == 0) return out;
  if (sgn(p.eval(lo)) == 0 || sgn(p.eval(hi)) == 0)
    throw std::invalid_argument("isolate_real_roots: endpoint is a root");
  Poly q = square_free_part(p);
  auto chain = sturm_chain(q);
  isolate_rec(q, chain, lo, hi, out, 0);
  // intervals arrive unordered only through the exact-root branch; sort by lo
  std::sort(out.begin(), out.end(),
            [](const RootInterval& x, const RootInterval& y) { return x.lo < y.lo; });
  return out;
}

RootInterval refine_root(const Poly& p, RootInterval iv, const Rational& width) {
  if (iv.exact) return iv;
  Poly q = square_free_part(p);
  int slo = sgn(q.eval(iv.lo));
  int shi = sgn(q.eval(iv.hi));
  if (slo == 0 || shi == 0 || slo == shi)
    throw std::runtime_error("refine_root: interval does not bracket a sign change");
  while (iv.hi - iv.lo > width) {
    Rational m = (iv.lo + iv.hi) / 2;
    int sm = sgn(q.eval(m));
    if (sm == 0) return {m, m, true};
    if (sm == slo)
      iv.lo = m;
    else
      iv.hi = m;
  }
  return iv;
}

std::optional<Rational> find_exact_root(const Poly& p, const RootInterval& iv) {
  if (iv.exact) return iv.lo;
  RootInterval narrow = refine_root(p, iv, Rational(1, 1000000000));
  if (narrow.exact) return narrow.lo;
  Rational guess = simplest_between(narrow.lo, narrow.hi);
  if (sgn(p.eval(guess)) == 0) return guess;
  return std::nullopt;
}

Rational cauchy_bound(const Poly& p) {
  if (p.degree() < 0) throw std::invalid_argument("cauchy_bound: zero polynomial");
  Rational lead = rat_abs(p.coeff(p.degree()));
  Rational mx(0);
  for (int i = 0; i < p.degree(); ++i) mx = std::max(mx, rat_abs(p.coeff(i)));
  return 1 + mx / lead;
}

}  // namespace zsv
