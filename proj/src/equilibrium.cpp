#include "zsv/equilibrium.hpp"

#include <algorithm>
#include <stdexcept>

namespace zsv {

namespace {

// lambda^m (1-lambda)^(n-1-m) expanded into a polynomial in lambda
Poly lambda_weight_poly(int n, int m) {
  Poly p;
  for (int j = 0; j <= n - 1 - m; ++j) {
    Rational c = binom(n - 1 - m, j);
    if (j % 2) c = -c;
    p.add_term(m + j, c);
  }
  return p;
}

// removes factors of x and (x - 1) so Sturm isolation can run on (0,1)
Poly strip_unit_interval_endpoints(Poly p) {
  while (!p.is_zero() && sgn(p.coeff(0)) == 0) {
    std::vector<Rational> shifted(p.coeffs().begin() + 1, p.coeffs().end());
    p = Poly(std::move(shifted));
  }
  Poly x_minus_1({Rational(-1), Rational(1)});
  while (!p.is_zero() && sgn(p.eval(Rational(1))) == 0)
    p = Poly::divmod(p, x_minus_1).first;
  return p;
}

int sign_near_zero(const Poly& p) {
  for (int i = 0; i <= p.degree(); ++i)
    if (sgn(p.coeff(i)) != 0) return sgn(p.coeff(i));
  return 0;
}

}  // namespace

Rational payoff_gap(const ZTable& z, const StrategyProfile& profile, int voter,
                    const Rational& lambda) {
  const int n = z.n(), tau = z.tau();
  if (profile.n() != n) throw std::invalid_argument("payoff_gap: profile size mismatch");
  PivotalTable piv(profile, voter);
  std::vector<Rational> lam_pow(n), rem_pow(n);
  for (int k = 0; k < n; ++k) {
    lam_pow[k] = rat_pow(lambda, k);
    rem_pow[k] = rat_pow(1 - lambda, k);
  }
  Rational total(0);
  for (int g = 0; g <= tau; ++g)
    for (int m = g; m <= tau + g; ++m) {
      Rational zz = z.z(g, m);
      if (sgn(zz) == 0) continue;
      Rational pv = piv.prob(g, m);
      if (sgn(pv) == 0) continue;
      total += pv * binom(n - 1, m) * lam_pow[m] * rem_pow[n - 1 - m] * zz;
    }
  return total;
}

Poly payoff_gap_lambda_poly(const ZTable& z, const StrategyProfile& profile, int voter) {
  const int n = z.n(), tau = z.tau();
  PivotalTable piv(profile, voter);
  Poly out;
  for (int g = 0; g <= tau; ++g)
    for (int m = g; m <= tau + g; ++m) {
      Rational c = piv.prob(g, m) * binom(n - 1, m) * z.z(g, m);
      if (sgn(c) == 0) continue;
      out = out + lambda_weight_poly(n, m).scaled(c);
    }
  return out;
}

EquilibriumResult verify(const ZTable& z, const StrategyProfile& profile,
                         const Rational& lambda, const Rational& mixed_tol) {
  EquilibriumResult res;
  res.profile = profile;
  res.lambda = lambda;
  res.is_equilibrium = true;
  bool all_pure = true;
  bool have_margin = false;
  for (int i = 0; i < z.n(); ++i) {
    Rational gap = payoff_gap(z, profile, i, lambda);
    const Rational& s = profile.sigma[i];
    Rational slack;
    if (s == 1) {
      if (sgn(gap) < 0) res.is_equilibrium = false;
      slack = gap;
    } else if (sgn(s) == 0) {
      if (sgn(gap) > 0) res.is_equilibrium = false;
      slack = -gap;
    } else {
      all_pure = false;
      if (rat_abs(gap) > mixed_tol) res.is_equilibrium = false;
      slack = -rat_abs(gap);
    }
    if (!have_margin || slack < res.margin) {
      res.margin = slack;
      have_margin = true;
    }
    res.gaps.push_back(std::move(gap));
  }
  res.is_strict = res.is_equilibrium && all_pure && sgn(res.margin) > 0;
  return res;
}

Rational pivotal_probability_total(const ZTable& z, const StrategyProfile& profile,
                                   int voter, const Rational& lambda) {
  const int n = z.n(), tau = z.tau();
  PivotalTable piv(profile, voter);
  Rational total(0);
  for (int g = 0; g <= tau; ++g)
    for (int m = g; m <= tau + g; ++m)
      total += piv.prob(g, m) * binom(n - 1, m) * rat_pow(lambda, m) *
               rat_pow(1 - lambda, n - 1 - m) * z.p_g_given_m(g, m);
  return total;
}

Rational pivotal_conditional_payoff(const ZTable& z, const StrategyProfile& profile,
                                    int voter, const Rational& lambda) {
  Rational p = pivotal_probability_total(z, profile, voter, lambda);
  if (sgn(p) == 0) throw std::domain_error("pivotal event is null");
  return payoff_gap(z, profile, voter, lambda) / p;
}

std::optional<Rational> pivotal_winner_prob(const ZTable& z, const StrategyProfile& profile,
                                            int voter, const Rational& lambda) {
  if (!z.payoffs()) return std::nullopt;
  const int n = z.n(), tau = z.tau();
  PivotalTable piv(profile, voter);
  Rational num(0), den(0);
  for (int g = 0; g <= tau; ++g)
    for (int m = g; m <= tau + g; ++m) {
      Rational w = piv.prob(g, m) * binom(n - 1, m) * rat_pow(lambda, m) *
                   rat_pow(1 - lambda, n - 1 - m) * z.p_g_given_m(g, m);
      if (sgn(w) == 0) continue;
      den += w;
      num += w * *z.winner_prob(g, m);
    }
  if (sgn(den) == 0) return std::nullopt;
  return num / den;
}

namespace {

LambdaThreshold threshold_from_margins(const std::vector<Poly>& margins) {
  LambdaThreshold th;
  th.value = 0;
  for (const Poly& f : margins) {
    if (f.is_zero()) {
      th.never = true;
      th.diagnostic = "payoff gap identically zero: never a strict equilibrium";
      return th;
    }
    if (sign_near_zero(f) <= 0) {
      th.never = true;
      th.diagnostic = "margin not positive as lambda approaches 0";
      return th;
    }
  }
  Rational best(1);
  bool best_exact = true;
  for (const Poly& f : margins) {
    Poly g = strip_unit_interval_endpoints(f);
    if (g.is_zero() || g.degree() == 0) continue;
    auto roots = isolate_real_roots(g, Rational(0), Rational(1));
    if (roots.empty()) continue;
    RootInterval first = roots.front();
    auto exact = find_exact_root(g, first);
    if (exact) {
      if (*exact < best) {
        best = *exact;
        best_exact = true;
      }
    } else {
      RootInterval narrow = refine_root(g, first, Rational(1, 1000000000));
      Rational mid = (narrow.lo + narrow.hi) / 2;
      if (mid < best) {
        best = mid;
        best_exact = false;
      }
    }
  }
  th.value = best;
  th.is_exact = best_exact;

  // single-crossing audit on a 64-point grid: report, never hide
  bool above_seen_positive = false;
  const int kGrid = 64;
  for (int k = 1; k <= kGrid; ++k) {
    Rational x = ratio(k, kGrid + 1);
    if (x <= th.value) continue;
    bool all_pos = true;
    for (const Poly& f : margins) all_pos = all_pos && sgn(f.eval(x)) > 0;
    if (all_pos) above_seen_positive = true;
  }
  if (above_seen_positive) {
    th.non_monotone = true;
    th.diagnostic = "margins return to positive above the first crossing";
  }
  return th;
}

}  // namespace

LambdaThreshold lambda_threshold(const ZTable& z, const StrategyProfile& profile) {
  if (!profile.is_pure())
    throw std::invalid_argument("lambda_threshold expects a pure profile");
  std::vector<Poly> margins;
  for (int i = 0; i < z.n(); ++i) {
    Poly f = payoff_gap_lambda_poly(z, profile, i);
    if (sgn(profile.sigma[i]) == 0) f = f.scaled(Rational(-1));
    margins.push_back(std::move(f));
  }
  return threshold_from_margins(margins);
}

SuspiciousConstruction construct_suspicious(const ZTable& z) {
  const int tau = z.tau();
  int kappa_star = -1;
  for (int k = 1; k <= tau; ++k)
    if (sgn(z.vg(k)) < 0) kappa_star = k;
  if (kappa_star < 0)
    throw std::invalid_argument(
        "construct_suspicious: problem is advantageously correlated");
  SuspiciousConstruction c;
  c.kappa_star = kappa_star;
  int sanguine = sgn(z.vg(tau)) < 0 ? 0 : tau - kappa_star;
  c.profile = StrategyProfile::cutoff(z.n(), sanguine);
  c.lambda_bar = lambda_threshold(z, c.profile);
  return c;
}

Poly symmetric_alpha_poly(const ZTable& z, const Rational& lambda) {
  const int n = z.n(), tau = z.tau();
  Poly out;
  for (int g = 0; g <= tau; ++g)
    for (int m = g; m <= tau + g; ++m) {
      Rational zz = z.z(g, m);
      if (sgn(zz) == 0) continue;
      Rational c = multinomial(n - 1, {static_cast<long>(m), static_cast<long>(tau - g),
                                       static_cast<long>(tau + g - m)}) *
                   rat_pow(lambda, m) * rat_pow(1 - lambda, n - 1 - m) * zz;
      // alpha^(tau-g) (1-alpha)^(tau+g-m)
      for (int j = 0; j <= tau + g - m; ++j) {
        Rational bc = binom(tau + g - m, j) * c;
        if (j % 2) bc = -bc;
        out.add_term(tau - g + j, bc);
      }
    }
  return out;
}

namespace {

SymmetricSolutions solve_from_alpha_poly(const Poly& pi_alpha) {
  SymmetricSolutions sol;
  if (pi_alpha.is_zero()) {
    sol.degenerate = true;
    sol.alpha0 = sol.alpha1 = true;
    return sol;
  }
  sol.alpha0 = sgn(pi_alpha.eval(Rational(0))) <= 0;
  sol.alpha1 = sgn(pi_alpha.eval(Rational(1))) >= 0;
  Poly g = strip_unit_interval_endpoints(pi_alpha);
  if (g.is_zero() || g.degree() == 0) return sol;
  for (const RootInterval& iv : isolate_real_roots(g, Rational(0), Rational(1))) {
    SymRoot root;
    auto exact = find_exact_root(g, iv);
    if (exact) {
      root.lo = root.hi = root.mid = *exact;
      root.exact = true;
    } else {
      RootInterval narrow =
          refine_root(g, iv, Rational(mpz_class(1), mpz_class("1000000000000")));
      root.lo = narrow.lo;
      root.hi = narrow.hi;
      root.mid = (narrow.lo + narrow.hi) / 2;
      root.exact = false;
    }
    sol.interior.push_back(std::move(root));
  }
  return sol;
}

}  // namespace

SymmetricSolutions solve_symmetric(const ZTable& z, const Rational& lambda) {
  return solve_from_alpha_poly(symmetric_alpha_poly(z, lambda));
}

GoodConstruction construct_good(const ZTable& z, const Rational& lambda) {
  auto attempt = [&](const Rational& lam, GoodConstruction* out) -> bool {
    Poly pi_alpha = symmetric_alpha_poly(z, lam);
    if (sgn(pi_alpha.eval(Rational(1))) >= 0) {
      out->profile = StrategyProfile::symmetric(z.n(), Rational(1));
      out->interior = false;
      return true;
    }
    SymmetricSolutions sol = solve_from_alpha_poly(pi_alpha);
    if (!sol.interior.empty()) {
      const SymRoot& root = sol.interior.back();
      out->profile = StrategyProfile::symmetric(z.n(), root.mid);
      out->interior = true;
      out->root = root;
      return true;
    }
    return false;
  };
  GoodConstruction c;
  if (attempt(lambda, &c)) {
    c.ok = true;
    return c;
  }
  // bisect for the largest lambda at which the construction goes through
  Rational lo(0), hi = lambda;
  GoodConstruction probe;
  for (int it = 0; it < 40; ++it) {
    Rational mid = (lo + hi) / 2;
    if (sgn(mid) == 0) break;
    if (attempt(mid, &probe))
      lo = mid;
    else
      hi = mid;
  }
  c.ok = false;
  c.max_admissible = lo;
  return c;
}

// ---------------------------------------------------------------------------
// population uncertainty

Rational population_gap(const PopulationSpec& spec, const Rational& alpha,
                        const Rational& lambda) {
  return population_alpha_poly(spec, lambda).eval(alpha);
}

Poly population_alpha_poly(const PopulationSpec& spec, const Rational& lambda) {
  Poly out;
  Rational mu = spec.mean_size();
  for (size_t idx = 0; idx < spec.support.size(); ++idx) {
    int n = spec.support[idx];
    const int tau = (n - 1) / 2;
    Rational weight = Rational(n) * spec.probs[idx] / mu;
    if (sgn(weight) == 0) continue;
    ZTable z = ZTable::from_spec(spec.spec_for(n));
    for (int g = 0; g <= tau; ++g)
      for (int m = g; m <= tau + g; ++m) {
        Rational zz = z.z(g, m);
        if (sgn(zz) == 0) continue;
        Rational c = weight *
                     multinomial(n - 1, {static_cast<long>(m), static_cast<long>(tau - g),
                                         static_cast<long>(tau + g - m)}) *
                     rat_pow(lambda, m) * rat_pow(1 - lambda, n - 1 - m) * zz;
        for (int j = 0; j <= tau + g - m; ++j) {
          Rational bc = binom(tau + g - m, j) * c;
          if (j % 2) bc = -bc;
          out.add_term(tau - g + j, bc);
        }
      }
  }
  return out;
}

SymmetricSolutions population_solve_symmetric(const PopulationSpec& spec,
                                              const Rational& lambda) {
  return solve_from_alpha_poly(population_alpha_poly(spec, lambda));
}

// ---------------------------------------------------------------------------
// elites

namespace {

Rational hypergeom(int g, int winners, int pool, int m) {
  if (m > pool || g < 0 || g > winners || m - g < 0 || m - g > pool - winners)
    return Rational(0);
  return binom(winners, g) * binom(pool - winners, m - g) / binom(pool, m);
}

}  // namespace

Rational elite_z(const EliteSpec& spec, bool voter_is_elite, int g_e, int g_n, int m_e,
                 int m_n) {
  const int n = spec.base.n, e = spec.elite_count;
  const int elites_o = e - (voter_is_elite ? 1 : 0);
  const int nonelites_o = (n - e) - (voter_is_elite ? 0 : 1);
  const Rational& vw = spec.base.payoffs.vw;
  const Rational& vl = spec.base.payoffs.vl;
  Rational total(0);
  for (int w = 0; w <= n; ++w) {
    const Rational& pw = spec.base.winner_dist[w];
    if (sgn(pw) == 0) continue;
    if (w >= e) {
      // every elite wins; w-e of the n-e non-elites win
      Rational eliteside = (g_e == m_e) ? Rational(1) : Rational(0);
      if (voter_is_elite) {
        Rational hn = hypergeom(g_n, w - e, n - e, m_n);
        total += pw * eliteside * hn * vw;
      } else {
        Rational p_win = Rational(w - e) / (n - e);
        Rational hn_win = hypergeom(g_n, w - e - 1, nonelites_o, m_n);
        Rational hn_lose = hypergeom(g_n, w - e, nonelites_o, m_n);
        total += pw * eliteside * (p_win * hn_win * vw - (1 - p_win) * hn_lose * vl);
      }
    } else {
      // winners do not cover the elites; non-elites all lose
      Rational noneliteside = (g_n == 0) ? Rational(1) : Rational(0);
      if (voter_is_elite) {
        Rational p_win = Rational(w) / e;
        Rational he_win = hypergeom(g_e, w - 1, elites_o, m_e);
        Rational he_lose = hypergeom(g_e, w, elites_o, m_e);
        total += pw * noneliteside * (p_win * he_win * vw - (1 - p_win) * he_lose * vl);
      } else {
        Rational he = hypergeom(g_e, w, elites_o, m_e);
        total += pw * noneliteside * he * (-vl);
      }
    }
  }
  return total;
}

namespace {

// sum over informed placements of P(uninformed others cast exactly t votes
// for the optimal policy), indexed by t
std::vector<std::vector<std::vector<Rational>>> placement_vote_sums(
    const EliteSpec& spec, const StrategyProfile& profile, int voter) {
  const int n = spec.base.n, e = spec.elite_count;
  std::vector<int> elite_others, nonelite_others;
  for (int j = 0; j < n; ++j) {
    if (j == voter) continue;
    (j < e ? elite_others : nonelite_others).push_back(j);
  }
  const int eo = static_cast<int>(elite_others.size());
  const int no = static_cast<int>(nonelite_others.size());
  // sums[m_e][m_n][t]
  std::vector<std::vector<std::vector<Rational>>> sums(
      eo + 1, std::vector<std::vector<Rational>>(no + 1, std::vector<Rational>(n, Rational(0))));
  for (unsigned em = 0; em < (1u << eo); ++em)
    for (unsigned nm = 0; nm < (1u << no); ++nm) {
      std::vector<Rational> pmf{Rational(1)};
      auto fold = [&](int j) {
        const Rational& s = profile.sigma[j];
        std::vector<Rational> nxt(pmf.size() + 1, Rational(0));
        for (size_t t = 0; t < pmf.size(); ++t) {
          nxt[t] += pmf[t] * (1 - s);
          nxt[t + 1] += pmf[t] * s;
        }
        pmf = std::move(nxt);
      };
      for (int a = 0; a < eo; ++a)
        if (!(em & (1u << a))) fold(elite_others[a]);
      for (int a = 0; a < no; ++a)
        if (!(nm & (1u << a))) fold(nonelite_others[a]);
      int me = __builtin_popcount(em), mn = __builtin_popcount(nm);
      for (size_t t = 0; t < pmf.size(); ++t) sums[me][mn][t] += pmf[t];
    }
  return sums;
}

}  // namespace

Rational elite_gap(const EliteSpec& spec, const StrategyProfile& profile, int voter,
                   const Rational& lambda) {
  const int n = spec.base.n, e = spec.elite_count;
  const int tau = spec.base.tau();
  const bool voter_is_elite = voter < e;
  const int eo = e - (voter_is_elite ? 1 : 0);
  const int no = (n - e) - (voter_is_elite ? 0 : 1);
  auto sums = placement_vote_sums(spec, profile, voter);
  Rational total(0);
  for (int m_e = 0; m_e <= eo; ++m_e)
    for (int m_n = 0; m_n <= no; ++m_n) {
      Rational lam_w =
          rat_pow(lambda, m_e + m_n) * rat_pow(1 - lambda, n - 1 - m_e - m_n);
      for (int g_e = 0; g_e <= m_e; ++g_e)
        for (int g_n = 0; g_n <= m_n; ++g_n) {
          int t = tau - g_e - g_n;  // votes still needed from the uninformed
          if (t < 0 || t >= static_cast<int>(sums[m_e][m_n].size())) continue;
          Rational zz = elite_z(spec, voter_is_elite, g_e, g_n, m_e, m_n);
          if (sgn(zz) == 0) continue;
          total += lam_w * zz * sums[m_e][m_n][t];
        }
    }
  return total;
}

EliteEquilibriumResult elite_equilibrium(const EliteSpec& spec) {
  const int n = spec.base.n, e = spec.elite_count;
  const int tau = spec.base.tau();
  // leading-order signs are exactly the elite-adverse conditions
  Rational elite_lead = elite_z(spec, true, 0, tau - e + 1, 0, tau - e + 1);
  Rational nonelite_lead = elite_z(spec, false, 0, tau - e, 0, tau - e);
  if (!(e < tau) || sgn(elite_lead) <= 0 || sgn(nonelite_lead) >= 0)
    throw std::invalid_argument("elite_equilibrium: spec is not elite-adverse");

  EliteEquilibriumResult res;
  res.profile = StrategyProfile::cutoff(n, e);

  // margin polynomials in lambda for one representative voter per group
  std::vector<Poly> margins;
  for (int rep : {0, e}) {
    const bool is_elite = rep < e;
    const int eo = e - (is_elite ? 1 : 0);
    const int no = (n - e) - (is_elite ? 0 : 1);
    auto sums = placement_vote_sums(spec, res.profile, rep);
    Poly f;
    for (int m_e = 0; m_e <= eo; ++m_e)
      for (int m_n = 0; m_n <= no; ++m_n)
        for (int g_e = 0; g_e <= m_e; ++g_e)
          for (int g_n = 0; g_n <= m_n; ++g_n) {
            int t = tau - g_e - g_n;
            if (t < 0 || t >= static_cast<int>(sums[m_e][m_n].size())) continue;
            Rational c = elite_z(spec, is_elite, g_e, g_n, m_e, m_n) * sums[m_e][m_n][t];
            if (sgn(c) == 0) continue;
            f = f + lambda_weight_poly(n, m_e + m_n).scaled(c);
          }
    if (!is_elite) f = f.scaled(Rational(-1));
    margins.push_back(std::move(f));
  }
  res.lambda_bar = threshold_from_margins(margins);
  return res;
}

}  // namespace zsv
