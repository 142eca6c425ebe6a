#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zsv/equilibrium.hpp"
#include "zsv/probability.hpp"

namespace zsv {

// SplitMix64 (Steele, Lea, Flood 2014; the java.util.SplittableRandom
// finalizer). Chosen for published constants and trivially reproducible
// cross-platform streams; each Monte Carlo trial derives its own stream
// from (seed, trial index), so results do not depend on how trials are
// partitioned across workers.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  // uniform in [0, 1)
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  static SplitMix64 for_trial(std::uint64_t seed, std::uint64_t trial) {
    SplitMix64 mixer(seed ^ (0xA0761D6478BD642Full * (trial + 1)));
    return SplitMix64(mixer.next());
  }

 private:
  std::uint64_t state_;
};

struct OutcomeDistribution {
  bool exact = false;
  Rational p_star_win;               // exact mode
  std::vector<Rational> vote_dist;   // P(#votes for the optimal policy = v)
  double estimate = 0.0;             // Monte Carlo mode
  double ci_halfwidth = 0.0;         // 95% normal approximation
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

// Exact vote-count distribution by a per-state convolution over voters.
OutcomeDistribution exact_outcome(const ExplicitProblem& problem,
                                  const StrategyProfile& profile);

// Seeded Monte Carlo estimate of P(the optimal policy wins). Trial t draws
// its own stream from (seed, t), so splitting [first_trial, first_trial +
// trials) across workers reproduces the single-worker result exactly.
OutcomeDistribution monte_carlo(const ExplicitProblem& problem,
                                const StrategyProfile& profile, std::uint64_t trials,
                                std::uint64_t seed, std::uint64_t first_trial = 0);

// ---------------------------------------------------------------------------
// large fixed-fraction elections (double precision; exchangeability collapses
// the state space to binomial convolutions)

namespace frac {

// Pi_0 under the all-suspicious profile: only informed winners vote for the
// optimal policy, so the gap reduces to a single binomial sum over informed
// losers.
double gap_sigma0(int n, long w, double vw, double vl, double lambda);

// P(the optimal policy wins) under sigma^0 = upper tail of Bin(w, lambda);
// returned as the tail itself so values near 0 stay meaningful.
double pstar_win_sigma0(int n, long w, double lambda);

// win probability of the optimal policy under any symmetric profile: votes
// are Bin(w, lambda + (1-lambda) alpha) + Bin(n-w, (1-lambda) alpha).
double pstar_win_symmetric(int n, long w, double alpha, double lambda);

// lambda* lower bound 1 - (vl/vw)^{-1} rho(q)
double lambda_bound(const Rational& q, double vw, double vl);

// smallest odd n at which sigma^0 verifies as a strict equilibrium
std::optional<int> first_verifying_n(const Rational& q, double vw, double vl,
                                     double lambda, int n_max);

// seeded Monte Carlo for the sigma^0 profile at scale
double monte_carlo_sigma0(int n, long w, double lambda, std::uint64_t trials,
                          std::uint64_t seed);

}  // namespace frac

// ---------------------------------------------------------------------------
// parameter sweeps

enum class ProfileRule { Suspicious, Good, SymmetricRoot };

struct SweepRow {
  std::string param;    // grid value, formatted
  std::string profile;  // label of the profile evaluated
  double pi_min_margin = 0.0;
  bool is_equilibrium = false;
  double p_star_win = 0.0;
};

// lambda sweep over a fixed small problem
std::vector<SweepRow> sweep_lambda(const ZTable& z, const ExplicitProblem& problem,
                                   ProfileRule rule, const std::vector<Rational>& grid);

struct FracSweep {
  std::vector<SweepRow> rows;
  double bound = 0.0;                // the lambda* lower bound
  std::optional<int> first_n;        // N* for this lambda
};

// population-size sweep for a fixed-fraction family under sigma^0
FracSweep sweep_n(const Rational& q, const Payoffs& payoffs, const Rational& lambda,
                  const std::vector<int>& grid);

}  // namespace zsv
