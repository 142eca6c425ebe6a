#include "zsv/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "zsv/correlation.hpp"

namespace zsv {

OutcomeDistribution exact_outcome(const ExplicitProblem& problem,
                                  const StrategyProfile& profile) {
  const int n = problem.n;
  if (profile.n() != n) throw std::invalid_argument("exact_outcome: profile size mismatch");
  OutcomeDistribution out;
  out.exact = true;
  out.vote_dist.assign(n + 1, Rational(0));
  std::vector<Rational> pmf, nxt;
  for (const auto& st : problem.states) {
    pmf.assign(1, Rational(1));
    for (int j = 0; j < n; ++j) {
      Rational pj = st.signals[j] != 0
                        ? (problem.is_good(st.signals[j]) ? Rational(1) : Rational(0))
                        : profile.sigma[j];
      nxt.assign(pmf.size() + 1, Rational(0));
      for (size_t t = 0; t < pmf.size(); ++t) {
        if (sgn(pj) != 0) nxt[t + 1] += pmf[t] * pj;
        if (pj != 1) nxt[t] += pmf[t] * (1 - pj);
      }
      pmf = nxt;
    }
    for (int v = 0; v <= n; ++v) out.vote_dist[v] += st.prob * pmf[v];
  }
  out.p_star_win = 0;
  for (int v = problem.tau() + 1; v <= n; ++v) out.p_star_win += out.vote_dist[v];
  return out;
}

OutcomeDistribution monte_carlo(const ExplicitProblem& problem,
                                const StrategyProfile& profile, std::uint64_t trials,
                                std::uint64_t seed, std::uint64_t first_trial) {
  if (trials < 1) throw std::invalid_argument("monte_carlo: trials must be >= 1");
  const int n = problem.n;
  // state sampling by cumulative weights in double precision
  std::vector<double> cdf(problem.states.size());
  double acc = 0.0;
  for (size_t k = 0; k < problem.states.size(); ++k) {
    acc += to_double(problem.states[k].prob);
    cdf[k] = acc;
  }
  std::vector<double> sigma(n);
  for (int j = 0; j < n; ++j) sigma[j] = to_double(profile.sigma[j]);

  std::uint64_t wins = 0;
  for (std::uint64_t t = first_trial; t < first_trial + trials; ++t) {
    SplitMix64 rng = SplitMix64::for_trial(seed, t);
    double u = rng.uniform() * acc;
    size_t k = std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
    if (k >= problem.states.size()) k = problem.states.size() - 1;
    const auto& st = problem.states[k];
    int votes = 0;
    for (int j = 0; j < n; ++j) {
      if (st.signals[j] != 0)
        votes += problem.is_good(st.signals[j]) ? 1 : 0;
      else
        votes += rng.uniform() < sigma[j] ? 1 : 0;
    }
    if (votes > problem.tau()) ++wins;
  }
  OutcomeDistribution out;
  out.exact = false;
  out.trials = trials;
  out.seed = seed;
  out.estimate = static_cast<double>(wins) / static_cast<double>(trials);
  out.ci_halfwidth =
      1.959963984540054 * std::sqrt(out.estimate * (1.0 - out.estimate) /
                                    static_cast<double>(trials));
  return out;
}

// ---------------------------------------------------------------------------

namespace frac {

namespace {

double log_choose(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double binom_pmf(int n, int k, double p) {
  if (k < 0 || k > n) return 0.0;
  if (p <= 0.0) return k == 0 ? 1.0 : 0.0;
  if (p >= 1.0) return k == n ? 1.0 : 0.0;
  return std::exp(log_choose(n, k) + k * std::log(p) + (n - k) * std::log1p(-p));
}

}  // namespace

double gap_sigma0(int n, long w, double vw, double vl, double lambda) {
  // Expected payoff conditional on being pivotal. The voter's own status
  // tilts both the loser count among the others and the pivot odds, so the
  // informed-loser count is a two-branch binomial mixture, with the winner
  // branch weighted by (w - tau) / ((w - tau) + (n - w)(1 - lambda)).
  // At n = 3, w = 2 that weight is the familiar 1 / (2 - lambda).
  const int tau = (n - 1) / 2;
  const int losers = static_cast<int>(n - w);
  double p_win = (w - tau) / ((w - tau) + losers * (1.0 - lambda));
  double e_win = 0.0, e_lose = 0.0;
  for (int b = 0; b <= losers; ++b)
    e_win += vn_kernel_w(n, w, vw, vl, tau, b) * binom_pmf(losers, b, lambda);
  for (int b = 0; b <= losers - 1; ++b)
    e_lose += vn_kernel_w(n, w, vw, vl, tau, b) * binom_pmf(losers - 1, b, lambda);
  return p_win * e_win + (1.0 - p_win) * e_lose;
}

double pstar_win_sigma0(int n, long w, double lambda) {
  const int tau = (n - 1) / 2;
  double tail = 0.0;
  for (int k = tau + 1; k <= w; ++k) tail += binom_pmf(static_cast<int>(w), k, lambda);
  return tail;
}

double pstar_win_symmetric(int n, long w, double alpha, double lambda) {
  const int tau = (n - 1) / 2;
  double p_win_vote = lambda + (1.0 - lambda) * alpha;   // a winner votes optimal
  double p_lose_vote = (1.0 - lambda) * alpha;           // a loser votes optimal
  // convolution of Bin(w, p_win_vote) and Bin(n-w, p_lose_vote)
  const int m = static_cast<int>(w);
  std::vector<double> a(m + 1), b(n - m + 1);
  for (int k = 0; k <= m; ++k) a[k] = binom_pmf(m, k, p_win_vote);
  for (int k = 0; k <= n - m; ++k) b[k] = binom_pmf(n - m, k, p_lose_vote);
  double win = 0.0;
  for (int x = 0; x <= m; ++x) {
    if (a[x] == 0.0) continue;
    for (int y = std::max(0, tau + 1 - x); y <= n - m; ++y) win += a[x] * b[y];
  }
  return win;
}

double lambda_bound(const Rational& q, double vw, double vl) {
  return 1.0 - (vw / vl) * to_double(rho_critical(q));
}

std::optional<int> first_verifying_n(const Rational& q, double vw, double vl,
                                     double lambda, int n_max) {
  for (int n = 3; n <= n_max; n += 2) {
    long w = fixed_fraction_winners(n, q);
    if (gap_sigma0(n, w, vw, vl, lambda) < 0.0) return n;
  }
  return std::nullopt;
}

double monte_carlo_sigma0(int n, long w, double lambda, std::uint64_t trials,
                          std::uint64_t seed) {
  const int tau = (n - 1) / 2;
  std::uint64_t wins = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    SplitMix64 rng = SplitMix64::for_trial(seed, t);
    int votes = 0;
    for (long j = 0; j < w; ++j)
      if (rng.uniform() < lambda) ++votes;
    if (votes > tau) ++wins;
  }
  return static_cast<double>(wins) / static_cast<double>(trials);
}

}  // namespace frac

// ---------------------------------------------------------------------------

namespace {

std::string profile_label(ProfileRule rule, bool interior, double alpha) {
  switch (rule) {
    case ProfileRule::Suspicious:
      return "suspicious";
    case ProfileRule::Good:
      return interior ? "good(alpha=" + std::to_string(alpha) + ")" : "good(sigma^1)";
    case ProfileRule::SymmetricRoot:
      return "symmetric(alpha=" + std::to_string(alpha) + ")";
  }
  return "?";
}

}  // namespace

std::vector<SweepRow> sweep_lambda(const ZTable& z, const ExplicitProblem& problem,
                                   ProfileRule rule, const std::vector<Rational>& grid) {
  std::vector<SweepRow> rows;
  for (const Rational& lam : grid) {
    SweepRow row;
    row.param = to_string(lam);
    StrategyProfile profile;
    double alpha = 0.0;
    bool interior = false;
    Rational mixed_tol(0);
    switch (rule) {
      case ProfileRule::Suspicious: {
        try {
          profile = construct_suspicious(z).profile;
        } catch (const std::invalid_argument&) {
          row.profile = "suspicious(unavailable)";
          rows.push_back(row);
          continue;
        }
        break;
      }
      case ProfileRule::Good: {
        GoodConstruction c = construct_good(z, lam);
        if (!c.ok) {
          row.profile = "good(unavailable)";
          row.is_equilibrium = false;
          rows.push_back(row);
          continue;
        }
        profile = c.profile;
        interior = c.interior;
        alpha = to_double(profile.sigma[0]);
        if (interior) mixed_tol = Rational(1, 1000000000);
        break;
      }
      case ProfileRule::SymmetricRoot: {
        SymmetricSolutions sol = solve_symmetric(z, lam);
        if (sol.interior.empty()) {
          row.profile = "symmetric(no interior root)";
          row.is_equilibrium = false;
          rows.push_back(row);
          continue;
        }
        profile = StrategyProfile::symmetric(z.n(), sol.interior.front().mid);
        alpha = to_double(sol.interior.front().mid);
        mixed_tol = Rational(1, 1000000000);
        break;
      }
    }
    EquilibriumResult ver = verify(z, profile, lam, mixed_tol);
    row.profile = profile_label(rule, interior, alpha);
    row.pi_min_margin = to_double(ver.margin);
    row.is_equilibrium = ver.is_equilibrium;
    // outcome at this lambda: re-dilute the problem's core
    auto [core, old_lambda] = extract_core(problem);
    (void)old_lambda;
    row.p_star_win = to_double(exact_outcome(dilute(core, lam), profile).p_star_win);
    rows.push_back(row);
  }
  return rows;
}

FracSweep sweep_n(const Rational& q, const Payoffs& payoffs, const Rational& lambda,
                  const std::vector<int>& grid) {
  FracSweep out;
  double vw = to_double(payoffs.vw), vl = to_double(payoffs.vl);
  double lam = to_double(lambda);
  out.bound = frac::lambda_bound(q, vw, vl);
  out.first_n = frac::first_verifying_n(q, vw, vl, lam, 20001);
  for (int n : grid) {
    if (n % 2 == 0) throw std::invalid_argument("sweep_n: population sizes must be odd");
    long w = fixed_fraction_winners(n, q);
    SweepRow row;
    row.param = std::to_string(n);
    row.profile = "suspicious";
    double gap = frac::gap_sigma0(n, w, vw, vl, lam);
    row.pi_min_margin = -gap;  // sigma^0: margin is -Pi
    row.is_equilibrium = gap < 0.0;
    row.p_star_win = frac::pstar_win_sigma0(n, w, lam);
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace zsv
