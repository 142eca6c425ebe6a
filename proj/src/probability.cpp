#include "zsv/probability.hpp"

#include <cmath>
#include <stdexcept>

namespace zsv {

StrategyProfile StrategyProfile::symmetric(int n, const Rational& alpha) {
  StrategyProfile p;
  p.sigma.assign(n, alpha);
  return p;
}

StrategyProfile StrategyProfile::cutoff(int n, int t) {
  StrategyProfile p;
  p.sigma.assign(n, Rational(0));
  for (int i = 0; i < t && i < n; ++i) p.sigma[i] = 1;
  return p;
}

bool StrategyProfile::is_pure() const {
  for (const auto& s : sigma)
    if (sgn(s) != 0 && s != 1) return false;
  return true;
}

bool StrategyProfile::is_symmetric() const {
  for (const auto& s : sigma)
    if (s != sigma.front()) return false;
  return !sigma.empty();
}

PivotalTable::PivotalTable(const StrategyProfile& profile, int voter) {
  n_ = profile.n();
  if (voter < 0 || voter >= n_) throw std::out_of_range("pivotal: voter index");
  tau_ = (n_ - 1) / 2;
  // dp[a][b]: sum over ways to pick disjoint sets N1 (size a, factors sigma_j)
  // and N0 (size b, factors 1-sigma_j) among the others processed so far;
  // unpicked voters contribute factor 1 and end up being the informed ones.
  coeff_.assign(tau_ + 1, std::vector<Rational>(tau_ + 1, Rational(0)));
  coeff_[0][0] = 1;
  for (int j = 0; j < n_; ++j) {
    if (j == voter) continue;
    for (int a = tau_; a >= 0; --a)
      for (int b = tau_; b >= 0; --b) {
        Rational add(0);
        if (a > 0) add += profile.sigma[j] * coeff_[a - 1][b];
        if (b > 0) add += (1 - profile.sigma[j]) * coeff_[a][b - 1];
        coeff_[a][b] += add;
      }
  }
  inv_choose_.resize(n_);
  for (int m = 0; m < n_; ++m) inv_choose_[m] = 1 / binom(n_ - 1, m);
}

Rational PivotalTable::prob(int g, int m) const {
  if (g < 0 || g > tau_ || m < g || m > tau_ + g) return Rational(0);
  return coeff_[tau_ - g][tau_ - (m - g)] * inv_choose_[m];
}

Rational pivotal_prob(const StrategyProfile& profile, int voter, int g, int m) {
  return PivotalTable(profile, voter).prob(g, m);
}

// ---------------------------------------------------------------------------
// Z tables

ZTable ZTable::from_spec(const BinaryChoiceSpec& spec) {
  if (spec.signal_tech != SignalTech::PerfectNews &&
      spec.signal_tech != SignalTech::DistributionalNews) {
    return from_explicit(realize_binary(spec));
  }
  ZTable t;
  t.n_ = spec.n;
  t.tau_ = spec.tau();
  t.payoffs_ = spec.payoffs;
  t.zval_.assign(t.tau_ + 1, std::vector<Rational>(t.tau_ + 1, Rational(0)));
  t.pgm_.assign(t.tau_ + 1, std::vector<Rational>(t.tau_ + 1, Rational(0)));
  const int n = spec.n;
  // others hold w-1 winners with prob w/n (the voter is a winner herself)
  // and w winners with prob (n-w)/n; the informed set is a uniform m-subset.
  auto hyper = [&](int g, int m, int k) -> Rational {
    if (g < 0 || g > k || m - g < 0 || m - g > n - 1 - k) return Rational(0);
    return binom(k, g) * binom(n - 1 - k, m - g) / binom(n - 1, m);
  };
  for (int g = 0; g <= t.tau_; ++g)
    for (int d = 0; d <= t.tau_; ++d) {
      int m = g + d;
      if (m > n - 1) continue;
      Rational zv(0), pg(0);
      for (int w = 0; w <= n; ++w) {
        const Rational& pw = spec.winner_dist[w];
        if (sgn(pw) == 0) continue;
        Rational win_branch = Rational(w) / n * hyper(g, m, w - 1);
        Rational lose_branch = Rational(n - w) / n * hyper(g, m, w);
        pg += pw * (win_branch + lose_branch);
        zv += pw * (win_branch * spec.payoffs.vw - lose_branch * spec.payoffs.vl);
      }
      t.zval_[g][d] = zv;
      t.pgm_[g][d] = pg;
    }
  return t;
}

ZTable ZTable::from_explicit(const ExplicitProblem& pr, int voter) {
  ZTable t;
  t.n_ = pr.n;
  t.tau_ = pr.tau();
  Payoffs pay;
  if (detect_binary_payoffs(pr, &pay)) t.payoffs_ = pay;
  t.zval_.assign(t.tau_ + 1, std::vector<Rational>(t.tau_ + 1, Rational(0)));
  t.pgm_.assign(t.tau_ + 1, std::vector<Rational>(t.tau_ + 1, Rational(0)));
  // joint mass over (g, m) for the others, with S_voter = s0
  std::vector<Rational> m_mass(pr.n, Rational(0));
  for (const auto& st : pr.states) {
    if (st.signals[voter] != 0) continue;
    int g = 0, m = 0;
    for (int j = 0; j < pr.n; ++j) {
      if (j == voter || st.signals[j] == 0) continue;
      ++m;
      g += pr.is_good(st.signals[j]);
    }
    m_mass[m] += st.prob;
    if (g <= t.tau_ && m - g <= t.tau_) {
      t.pgm_[g][m - g] += st.prob;
      t.zval_[g][m - g] += st.prob * st.payoff_diff[voter];
    }
  }
  for (int g = 0; g <= t.tau_; ++g)
    for (int d = 0; d <= t.tau_; ++d) {
      int m = g + d;
      if (m >= pr.n || sgn(m_mass[m]) == 0) {
        t.pgm_[g][d] = 0;
        t.zval_[g][d] = 0;
        continue;
      }
      t.pgm_[g][d] /= m_mass[m];
      t.zval_[g][d] /= m_mass[m];
    }
  return t;
}

Rational ZTable::z(int g, int m) const {
  if (g < 0 || g > tau_ || m < g || m - g > tau_) return Rational(0);
  return zval_[g][m - g];
}

Rational ZTable::z_bad(int b, int m) const { return z(m - b, m); }

Rational ZTable::p_g_given_m(int g, int m) const {
  if (g < 0 || g > tau_ || m < g || m - g > tau_) return Rational(0);
  return pgm_[g][m - g];
}

Rational ZTable::vg(int kappa) const {
  if (kappa < 0 || kappa > tau_) throw std::out_of_range("vg: kappa > tau");
  if (sgn(pgm_[kappa][0]) == 0) return Rational(0);  // null event convention
  return zval_[kappa][0] / pgm_[kappa][0];
}

std::optional<Rational> ZTable::winner_prob(int g, int m) const {
  if (!payoffs_) return std::nullopt;
  if (sgn(p_g_given_m(g, m)) == 0) return std::nullopt;
  Rational v = z(g, m) / p_g_given_m(g, m);
  return (v + payoffs_->vl) / (payoffs_->vw + payoffs_->vl);
}

Rational z_value(const ExplicitProblem& problem, int first, int m, ZMode mode) {
  ZTable t = ZTable::from_explicit(problem);
  return mode == ZMode::GoodNews ? t.z(first, m) : t.z_bad(first, m);
}

Rational z_value(const BinaryChoiceSpec& spec, int first, int m, ZMode mode) {
  ZTable t = ZTable::from_spec(spec);
  return mode == ZMode::GoodNews ? t.z(first, m) : t.z_bad(first, m);
}

Rational vg_closed_form(const BinaryChoiceSpec& spec, int kappa) {
  if (kappa < 0 || kappa > spec.tau()) throw std::out_of_range("vg: kappa > tau");
  if (spec.signal_tech == SignalTech::AggregateNews)
    throw std::invalid_argument("closed form applies to perfect news only");
  const int n = spec.n;
  Rational num(0), den(0);
  for (int w = kappa; w <= n; ++w) {
    const Rational& pw = spec.winner_dist[w];
    if (sgn(pw) == 0) continue;
    Rational weight = binom(w, kappa) * pw;
    den += weight;
    num += weight * (Rational(w - kappa) / (n - kappa) * spec.payoffs.vw -
                     Rational(n - w) / (n - kappa) * spec.payoffs.vl);
  }
  if (sgn(den) == 0) return Rational(0);
  return num / den;
}

Rational vg(const BinaryChoiceSpec& spec, int kappa) {
  if (spec.signal_tech == SignalTech::AggregateNews)
    return ZTable::from_spec(spec).vg(kappa);
  return vg_closed_form(spec, kappa);
}

Rational vg(const ExplicitProblem& problem, int kappa) {
  return ZTable::from_explicit(problem).vg(kappa);
}

long fixed_fraction_winners(int n, const Rational& q) {
  return rat_ceil(q * n).get_num().get_si();
}

Rational vn_kernel(int n, const Rational& q, const Payoffs& payoffs, int g, int b) {
  long w = fixed_fraction_winners(n, q);
  if (g > (n - 1) / 2 || b > n - w || g < 0 || b < 0)
    throw std::out_of_range("vn_kernel: counts out of range");
  return Rational(w - g) / (n - g - b) * payoffs.vw -
         Rational(n - w - b) / (n - g - b) * payoffs.vl;
}

double vn_kernel_w(int n, long w, double vw, double vl, int g, int b) {
  return (static_cast<double>(w) - g) / (n - g - b) * vw -
         (static_cast<double>(n - w) - b) / (n - g - b) * vl;
}

}  // namespace zsv
