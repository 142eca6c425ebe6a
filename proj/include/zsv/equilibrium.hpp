#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zsv/poly.hpp"
#include "zsv/probability.hpp"

namespace zsv {

struct EquilibriumResult {
  StrategyProfile profile;
  std::vector<Rational> gaps;  // Pi_i per voter
  bool is_equilibrium = false;
  bool is_strict = false;
  // min over voters of the strict-inequality slack: Pi_i for sigma_i = 1,
  // -Pi_i for sigma_i = 0, -|Pi_i| for mixed coordinates
  Rational margin;
  Rational lambda;
};

// Pi_i(sigma, lambda) over the Z table (lambda-free) and the Lemma-style
// binomial informed-count weights.
Rational payoff_gap(const ZTable& z, const StrategyProfile& profile, int voter,
                    const Rational& lambda);

// Pi_i as an exact polynomial in lambda (used by the threshold searches).
Poly payoff_gap_lambda_poly(const ZTable& z, const StrategyProfile& profile, int voter);

// Exact verification of the equilibrium characterization. mixed_tol relaxes
// the |Pi_i| = 0 requirement at interior coordinates (float-mode tolerance or
// verification of approximated algebraic roots); exact mode passes 0.
EquilibriumResult verify(const ZTable& z, const StrategyProfile& profile,
                         const Rational& lambda, const Rational& mixed_tol = Rational(0));

// P(pivotal | S_i = s0) and the payoff conditional on being pivotal.
Rational pivotal_probability_total(const ZTable& z, const StrategyProfile& profile,
                                   int voter, const Rational& lambda);
Rational pivotal_conditional_payoff(const ZTable& z, const StrategyProfile& profile,
                                    int voter, const Rational& lambda);
// P(W_i | pivotal, S_i = s0) for binary-payoff problems.
std::optional<Rational> pivotal_winner_prob(const ZTable& z, const StrategyProfile& profile,
                                            int voter, const Rational& lambda);

struct LambdaThreshold {
  Rational value;       // sup lambda below which the profile verifies strictly
  bool is_exact = false;  // value identified as an exact rational root
  bool never = false;     // no strict region found; value is 0
  bool non_monotone = false;  // margins turn positive again above the threshold
  std::string diagnostic;
};

// Supremum lambda in (0,1] below which `verify` is strict, for pure profiles.
// Exact where the margin polynomials have rational roots; otherwise bisected
// to 1e-9. Sign monotonicity is checked on a 64-point grid and reported.
LambdaThreshold lambda_threshold(const ZTable& z, const StrategyProfile& profile);

struct SuspiciousConstruction {
  StrategyProfile profile;  // sigma^0, or sigma^(tau - kappa*)
  int kappa_star = 0;
  LambdaThreshold lambda_bar;
};

// The adverse-correlation construction: all-suspicious when V^G(tau) < 0,
// otherwise tau - kappa* sanguine voters ahead of suspicious ones.
SuspiciousConstruction construct_suspicious(const ZTable& z);

struct SymRoot {
  Rational lo, hi, mid;
  bool exact = false;  // mid is an exact root
};

struct SymmetricSolutions {
  std::vector<SymRoot> interior;  // roots of Pi_0(sigma^alpha) in (0,1)
  bool alpha0 = false;            // sigma^0 is an equilibrium
  bool alpha1 = false;            // sigma^1 is an equilibrium
  bool degenerate = false;        // gap identically zero: every alpha works
};

// All symmetric equilibria at a fixed lambda. Interior roots are isolated
// exactly and refined to width 1e-12.
SymmetricSolutions solve_symmetric(const ZTable& z, const Rational& lambda);

// Exact polynomial alpha -> Pi_0(sigma^alpha, lambda).
Poly symmetric_alpha_poly(const ZTable& z, const Rational& lambda);

struct GoodConstruction {
  StrategyProfile profile;
  bool interior = false;     // true: symmetric mixed equilibrium at `root`
  SymRoot root;              // certified bracket when interior
  bool ok = false;           // construction succeeded at the requested lambda
  Rational max_admissible;   // largest workable lambda found when !ok
};

// The optimal-policy equilibrium: sigma^1 when Z_B(tau,tau) >= 0, otherwise
// the largest interior symmetric root. On failure reports the largest
// admissible lambda found by bisection.
GoodConstruction construct_good(const ZTable& z, const Rational& lambda);

// ---------------------------------------------------------------------------
// population uncertainty (finite support, symmetric profiles)

// Pi(alpha, lambda) for a recruited voter under the size-biased posterior
// n Q(n) / mu, summed exactly over the finite support.
Rational population_gap(const PopulationSpec& spec, const Rational& alpha,
                        const Rational& lambda);
Poly population_alpha_poly(const PopulationSpec& spec, const Rational& lambda);
SymmetricSolutions population_solve_symmetric(const PopulationSpec& spec,
                                              const Rational& lambda);

// ---------------------------------------------------------------------------
// elites (two exchangeable groups, nested winners)

// Pi_i for an elite problem, summed over group-resolved counts
// (g_E, g_N, m_E, m_N) with placement-averaged pivotal factors.
Rational elite_gap(const EliteSpec& spec, const StrategyProfile& profile, int voter,
                   const Rational& lambda);

// Z_i(g_E, g_N, m_E, m_N) under the nested-winner model; i is identified
// only through its group.
Rational elite_z(const EliteSpec& spec, bool voter_is_elite, int g_e, int g_n, int m_e,
                 int m_n);

struct EliteEquilibriumResult {
  StrategyProfile profile;  // uninformed elites vote the optimal policy
  LambdaThreshold lambda_bar;
};

// The elite-adverse construction with its strictness threshold.
EliteEquilibriumResult elite_equilibrium(const EliteSpec& spec);

}  // namespace zsv
