#pragma once

#include <string>
#include <vector>

#include "zsv/model.hpp"
#include "zsv/probability.hpp"

namespace zsv::oracle {

// Ground truth for small problems (n <= 7): every quantity is recomputed
// from its definition by literal enumeration, with no shortcuts and no code
// shared with the fast paths it checks.

constexpr int kMaxOracleVoters = 7;

// Pi_i as the definitional sum over all states and all 2^(n-1) action
// profiles of the other voters, after re-diluting the problem's informed
// core at the given lambda.
Rational brute_force_gap(const ExplicitProblem& problem, const StrategyProfile& profile,
                         int voter, const Rational& lambda);

// Literal evaluation of the pivotal sum over disjoint subset pairs (N0, N1).
Rational literal_pivotal(const StrategyProfile& profile, int voter, int g, int m);

// Z(g,m), V^G(kappa) and the exact outcome, all by direct conditioning.
Rational literal_z(const ExplicitProblem& problem, int voter, int g, int m);
Rational literal_vg(const ExplicitProblem& problem, int voter, int kappa);
Rational literal_outcome(const ExplicitProblem& problem, const StrategyProfile& profile);
// P(M = m | S_voter = s0) straight from the state table.
Rational literal_m_given_s0(const ExplicitProblem& problem, int voter, int m);

struct PureEquilibrium {
  StrategyProfile profile;
  bool is_equilibrium = false;
  bool is_strict = false;
  Rational p_star_win;
};

// All 2^n pure uninformed-vote assignments with brute-force verdicts.
std::vector<PureEquilibrium> enumerate_pure_equilibria(const ExplicitProblem& problem,
                                                       const Rational& lambda);

struct OracleReport {
  std::string quantity;
  Rational definitional_value;
  Rational fast_path_value;
  bool match = false;
};

struct CrossCheckInput {
  const ExplicitProblem* problem = nullptr;
  const StrategyProfile* profile = nullptr;
  int voter = 0;
  int g = 0, m = 0, kappa = 0;
  Rational lambda;
};

// quantity in {"gap", "pivotal", "z", "vg", "outcome"}; dispatches both the
// oracle path and the corresponding fast path and compares exactly.
OracleReport cross_check(const std::string& quantity, const CrossCheckInput& in);

}  // namespace zsv::oracle
