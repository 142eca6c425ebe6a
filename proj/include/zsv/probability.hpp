#pragma once

#include <optional>
#include <vector>

#include "zsv/model.hpp"

namespace zsv {

// Uninformed-vote probabilities of a weakly undominated profile. Informed
// behavior (good news -> optimal policy, bad news -> inferior policy) is
// never stored; it is enforced wherever votes are evaluated.
struct StrategyProfile {
  std::vector<Rational> sigma;

  int n() const { return static_cast<int>(sigma.size()); }
  static StrategyProfile symmetric(int n, const Rational& alpha);
  // first t voters vote the optimal policy when uninformed, the rest the
  // inferior one
  static StrategyProfile cutoff(int n, int t);
  bool is_pure() const;
  bool is_symmetric() const;
};

// p_i(sigma | g, m) for all (g, m): probability that exactly tau of the
// others vote for the optimal policy given g good / m informed among them.
// Computed as a trivariate coefficient extraction over the others' mixed
// votes, O(n^3); equals the definitional subset sum.
class PivotalTable {
 public:
  PivotalTable(const StrategyProfile& profile, int voter);
  // zero outside 0 <= g <= tau, g <= m <= tau + g
  Rational prob(int g, int m) const;
  int tau() const { return tau_; }

 private:
  int n_, tau_;
  std::vector<std::vector<Rational>> coeff_;  // [a][b], a = tau-g, b = tau-(m-g)
  std::vector<Rational> inv_choose_;          // 1 / C(n-1, m)
};

Rational pivotal_prob(const StrategyProfile& profile, int voter, int g, int m);

// Z(g,m) and companions, with all counts taken over the n-1 voters other
// than the conditioning voter. The table is lambda-free.
class ZTable {
 public:
  static ZTable from_spec(const BinaryChoiceSpec& spec);
  static ZTable from_explicit(const ExplicitProblem& problem, int voter = 0);

  int n() const { return n_; }
  int tau() const { return tau_; }

  // Z(g,m) = P(G=g | M=m, S_i=s0) * V_i^d(G=g, M=m, S_i=s0); 0 when null.
  Rational z(int g, int m) const;
  // Z_B(b,m) = Z(m-b, m)
  Rational z_bad(int b, int m) const;
  // P(G=g | M=m, S_i=s0)
  Rational p_g_given_m(int g, int m) const;
  // V^G(kappa) = V_i^d(G=kappa, B=0, S_i=s0); 0 when null.
  Rational vg(int kappa) const;

  // binary payoffs when the source had them; enables winner-probability
  // recovery P(W_i | event) = (V + vl) / (vw + vl)
  const std::optional<Payoffs>& payoffs() const { return payoffs_; }
  std::optional<Rational> winner_prob(int g, int m) const;

 private:
  int n_ = 0, tau_ = 0;
  // index [g][m-g] for 0 <= g <= tau, 0 <= m-g <= tau
  std::vector<std::vector<Rational>> zval_, pgm_;
  std::optional<Payoffs> payoffs_;
};

// mode selector mirroring the good-news / bad-news forms of Z
enum class ZMode { GoodNews, BadNews };

Rational z_value(const ExplicitProblem& problem, int first, int m, ZMode mode);
Rational z_value(const BinaryChoiceSpec& spec, int first, int m, ZMode mode);

// V^G(kappa) for perfect-news specs in closed form (posterior over the
// winner count reweighted by binom(w, kappa)).
Rational vg_closed_form(const BinaryChoiceSpec& spec, int kappa);
Rational vg(const BinaryChoiceSpec& spec, int kappa);
Rational vg(const ExplicitProblem& problem, int kappa);

// V_n(g,b) for the fixed-fraction problem with ceil(q*n) winners.
Rational vn_kernel(int n, const Rational& q, const Payoffs& payoffs, int g, int b);
// same kernel with the winner count already resolved, for large-n sweeps
double vn_kernel_w(int n, long w, double vw, double vl, int g, int b);

long fixed_fraction_winners(int n, const Rational& q);

}  // namespace zsv
