#include "zsv/oracle.hpp"

#include <stdexcept>

#include "zsv/equilibrium.hpp"
#include "zsv/simulate.hpp"

namespace zsv::oracle {

namespace {

void size_guard(int n) {
  if (n > kMaxOracleVoters)
    throw std::invalid_argument("oracle: brute force is limited to n <= 7");
}

// The oracle keeps its own tiny combinatorics on purpose.
Rational local_binom(int n, int k) {
  if (k < 0 || k > n) return Rational(0);
  Rational r(1);
  for (int i = 0; i < k; ++i) r = r * Rational(n - i) / Rational(i + 1);
  return r;
}

Rational local_pow(const Rational& x, int e) {
  Rational r(1);
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

struct DilutedState {
  const ExplicitState* core;
  unsigned informed_mask;
  Rational prob;
};

// Literal two-stage rebuild of the problem at a chosen lambda: first the
// informed core (conditioning on everyone informed), then independent
// deletion of each voter's signal.
std::vector<DilutedState> literal_dilution(const ExplicitProblem& problem,
                                           const Rational& lambda,
                                           std::vector<ExplicitState>& core_storage) {
  const int n = problem.n;
  if (!(lambda > 0 && lambda < 1))
    throw std::invalid_argument("oracle: lambda outside (0,1)");
  Rational informed_mass(0);
  core_storage.clear();
  for (const auto& st : problem.states) {
    bool all_informed = true;
    for (int lbl : st.signals) all_informed = all_informed && lbl != 0;
    if (all_informed) {
      core_storage.push_back(st);
      informed_mass += st.prob;
    }
  }
  if (sgn(informed_mass) == 0)
    throw std::invalid_argument("oracle: problem has no informed core");
  std::vector<DilutedState> out;
  out.reserve(core_storage.size() << n);
  for (auto& st : core_storage) {
    st.prob /= informed_mass;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      int kept = __builtin_popcount(mask);
      out.push_back(
          {&st, mask, st.prob * local_pow(lambda, kept) * local_pow(1 - lambda, n - kept)});
    }
  }
  return out;
}

// vote probability of voter j in a diluted state under a weakly undominated
// profile: informed voters follow their news, uninformed ones follow sigma_j
Rational vote_prob(const ExplicitProblem& problem, const DilutedState& ds,
                   const StrategyProfile& profile, int j) {
  if (ds.informed_mask & (1u << j))
    return problem.is_good(ds.core->signals[j]) ? Rational(1) : Rational(0);
  return profile.sigma[j];
}

}  // namespace

Rational brute_force_gap(const ExplicitProblem& problem, const StrategyProfile& profile,
                         int voter, const Rational& lambda) {
  size_guard(problem.n);
  const int n = problem.n;
  const int tau = (n - 1) / 2;
  std::vector<ExplicitState> core;
  auto diluted = literal_dilution(problem, lambda, core);

  Rational p_s0(0), total(0);
  std::vector<Rational> p(n);
  for (const auto& ds : diluted) {
    if (ds.informed_mask & (1u << voter)) continue;  // condition on S_i = s0
    p_s0 += ds.prob;
    for (int j = 0; j < n; ++j)
      if (j != voter) p[j] = vote_prob(problem, ds, profile, j);
    // P_sigma(exactly tau of the others vote for the optimal policy)
    Rational pivotal(0);
    for (unsigned votes = 0; votes < (1u << n); ++votes) {
      if (votes & (1u << voter)) continue;
      if (__builtin_popcount(votes) != tau) continue;
      Rational term(1);
      bool zero = false;
      for (int j = 0; j < n && !zero; ++j) {
        if (j == voter) continue;
        if (votes & (1u << j)) {
          if (sgn(p[j]) == 0) zero = true;
          else term *= p[j];
        } else {
          Rational g = 1 - p[j];
          if (sgn(g) == 0) zero = true;
          else term *= g;
        }
      }
      if (!zero) pivotal += term;
    }
    total += ds.core->payoff_diff[voter] * pivotal * ds.prob;
  }
  return total / p_s0;
}

Rational literal_pivotal(const StrategyProfile& profile, int voter, int g, int m) {
  const int n = profile.n();
  size_guard(n);
  const int tau = (n - 1) / 2;
  if (g < 0 || g > tau || m < g || m > tau + g) return Rational(0);
  const int size1 = tau - g;        // uninformed voters voting the optimal policy
  const int size0 = tau - (m - g);  // uninformed voters voting the inferior policy
  Rational sum(0);
  for (unsigned n1 = 0; n1 < (1u << n); ++n1) {
    if (n1 & (1u << voter)) continue;
    if (__builtin_popcount(n1) != size1) continue;
    for (unsigned n0 = 0; n0 < (1u << n); ++n0) {
      if (n0 & (1u << voter)) continue;
      if (n0 & n1) continue;
      if (__builtin_popcount(n0) != size0) continue;
      Rational term(1);
      for (int j = 0; j < n; ++j) {
        if (n1 & (1u << j)) term *= profile.sigma[j];
        if (n0 & (1u << j)) term *= 1 - profile.sigma[j];
      }
      sum += term;
    }
  }
  return sum / local_binom(n - 1, m);
}

Rational literal_z(const ExplicitProblem& problem, int voter, int g, int m) {
  size_guard(problem.n);
  Rational num(0), den(0);
  for (const auto& st : problem.states) {
    if (st.signals[voter] != 0) continue;
    int gg = 0, mm = 0;
    for (int j = 0; j < problem.n; ++j) {
      if (j == voter || st.signals[j] == 0) continue;
      ++mm;
      gg += problem.is_good(st.signals[j]);
    }
    if (mm == m) {
      den += st.prob;
      if (gg == g) num += st.prob * st.payoff_diff[voter];
    }
  }
  if (sgn(den) == 0) return Rational(0);
  return num / den;
}

Rational literal_vg(const ExplicitProblem& problem, int voter, int kappa) {
  size_guard(problem.n);
  Rational num(0), den(0);
  for (const auto& st : problem.states) {
    if (st.signals[voter] != 0) continue;
    int gg = 0, bb = 0;
    for (int j = 0; j < problem.n; ++j) {
      if (j == voter || st.signals[j] == 0) continue;
      if (problem.is_good(st.signals[j]))
        ++gg;
      else
        ++bb;
    }
    if (gg == kappa && bb == 0) {
      den += st.prob;
      num += st.prob * st.payoff_diff[voter];
    }
  }
  if (sgn(den) == 0) return Rational(0);
  return num / den;
}

Rational literal_m_given_s0(const ExplicitProblem& problem, int voter, int m) {
  size_guard(problem.n);
  Rational num(0), den(0);
  for (const auto& st : problem.states) {
    if (st.signals[voter] != 0) continue;
    den += st.prob;
    int mm = 0;
    for (int j = 0; j < problem.n; ++j)
      if (j != voter && st.signals[j] != 0) ++mm;
    if (mm == m) num += st.prob;
  }
  return num / den;
}

Rational literal_outcome(const ExplicitProblem& problem, const StrategyProfile& profile) {
  size_guard(problem.n);
  const int n = problem.n;
  const int tau = (n - 1) / 2;
  Rational win(0);
  std::vector<Rational> p(n);
  for (const auto& st : problem.states) {
    for (int j = 0; j < n; ++j) {
      if (st.signals[j] != 0)
        p[j] = problem.is_good(st.signals[j]) ? Rational(1) : Rational(0);
      else
        p[j] = profile.sigma[j];
    }
    Rational state_win(0);
    for (unsigned votes = 0; votes < (1u << n); ++votes) {
      if (__builtin_popcount(votes) < tau + 1) continue;
      Rational term(1);
      bool zero = false;
      for (int j = 0; j < n && !zero; ++j) {
        if (votes & (1u << j)) {
          if (sgn(p[j]) == 0) zero = true;
          else term *= p[j];
        } else {
          Rational q = 1 - p[j];
          if (sgn(q) == 0) zero = true;
          else term *= q;
        }
      }
      if (!zero) state_win += term;
    }
    win += st.prob * state_win;
  }
  return win;
}

std::vector<PureEquilibrium> enumerate_pure_equilibria(const ExplicitProblem& problem,
                                                       const Rational& lambda) {
  size_guard(problem.n);
  const int n = problem.n;
  std::vector<ExplicitState> core_storage;
  auto rediluted_states = literal_dilution(problem, lambda, core_storage);
  // rebuild an explicit problem at this lambda for the outcome computation
  ExplicitProblem at_lambda;
  at_lambda.n = n;
  at_lambda.good_signals = problem.good_signals;
  at_lambda.bad_signals = problem.bad_signals;
  for (const auto& ds : rediluted_states) {
    ExplicitState st;
    st.payoff_diff = ds.core->payoff_diff;
    st.signals = ds.core->signals;
    for (int j = 0; j < n; ++j)
      if (!(ds.informed_mask & (1u << j))) st.signals[j] = 0;
    st.prob = ds.prob;
    at_lambda.states.push_back(std::move(st));
  }

  std::vector<PureEquilibrium> out;
  for (unsigned assign = 0; assign < (1u << n); ++assign) {
    PureEquilibrium pe;
    pe.profile.sigma.assign(n, Rational(0));
    for (int j = 0; j < n; ++j)
      if (assign & (1u << j)) pe.profile.sigma[j] = 1;
    pe.is_equilibrium = true;
    pe.is_strict = true;
    for (int voter = 0; voter < n; ++voter) {
      Rational gap = brute_force_gap(problem, pe.profile, voter, lambda);
      int s = sgn(gap);
      bool votes_up = (assign & (1u << voter)) != 0;
      if ((s > 0 && !votes_up) || (s < 0 && votes_up)) pe.is_equilibrium = false;
      if (s == 0) pe.is_strict = false;
    }
    pe.is_strict = pe.is_strict && pe.is_equilibrium;
    pe.p_star_win = literal_outcome(at_lambda, pe.profile);
    out.push_back(std::move(pe));
  }
  return out;
}

OracleReport cross_check(const std::string& quantity, const CrossCheckInput& in) {
  OracleReport rep;
  rep.quantity = quantity;
  if (quantity == "gap") {
    rep.definitional_value = brute_force_gap(*in.problem, *in.profile, in.voter, in.lambda);
    rep.fast_path_value =
        payoff_gap(ZTable::from_explicit(*in.problem, in.voter), *in.profile, in.voter, in.lambda);
  } else if (quantity == "pivotal") {
    rep.definitional_value = literal_pivotal(*in.profile, in.voter, in.g, in.m);
    rep.fast_path_value = pivotal_prob(*in.profile, in.voter, in.g, in.m);
  } else if (quantity == "z") {
    rep.definitional_value = literal_z(*in.problem, in.voter, in.g, in.m);
    rep.fast_path_value = z_value(*in.problem, in.g, in.m, ZMode::GoodNews);
  } else if (quantity == "vg") {
    rep.definitional_value = literal_vg(*in.problem, in.voter, in.kappa);
    rep.fast_path_value = vg(*in.problem, in.kappa);
  } else if (quantity == "outcome") {
    rep.definitional_value = literal_outcome(*in.problem, *in.profile);
    rep.fast_path_value = exact_outcome(*in.problem, *in.profile).p_star_win;
  } else {
    throw std::invalid_argument("cross_check: unknown quantity " + quantity);
  }
  rep.match = rep.definitional_value == rep.fast_path_value;
  return rep;
}

}  // namespace zsv::oracle
