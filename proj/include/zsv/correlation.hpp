#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zsv/poly.hpp"
#include "zsv/probability.hpp"

namespace zsv {

enum class KStarSign { Negative, Zero, Positive };
enum class KStarMethod { Exact, Numeric };

struct KStarResult {
  KStarSign sign = KStarSign::Positive;
  bool neg_infinity = false;            // leading coefficient negative
  double value = 0.0;                   // numeric infimum (ignored when -inf)
  std::optional<Rational> witness_theta;  // K(witness) < 0 when sign is Negative
  KStarMethod method = KStarMethod::Exact;
};

struct CorrelationReport {
  std::vector<Rational> vg_values;  // V^G(0..tau)
  bool adverse = false;
  std::optional<int> witness_min;  // smallest kappa with V^G < 0
  std::optional<int> witness_max;  // largest such kappa (= kappa*)
  std::optional<int> kappa_star;
  KStarResult kstar;
};

// Definition-2 classification plus the symmetric-equilibrium measure K*.
CorrelationReport classify(const ZTable& z, KStarMethod method = KStarMethod::Exact);
CorrelationReport classify(const BinaryChoiceSpec& spec,
                           KStarMethod method = KStarMethod::Exact);
CorrelationReport classify(const ExplicitProblem& problem,
                           KStarMethod method = KStarMethod::Exact);

// K(theta) = sum_k theta^k binom(tau,k) Z(k,k), the lambda-free coefficient
// form; kstar decides the sign of its infimum over theta > 0 exactly
// (Sturm-based) or numerically on a 1024-point log grid.
Poly kstar_poly(const ZTable& z);
KStarResult kstar(const ZTable& z, KStarMethod method = KStarMethod::Exact);

// critical polarization ratio for fixed-fraction problems
Rational rho_critical(const Rational& q);
// exact finite-n criterion: adverse iff vl/vw exceeds the finite-n ratio
bool adverse_at_n(const Rational& q, const Payoffs& payoffs, int n);

struct CompareAC {
  bool holds = false;  // A is more adversely correlated than B
  std::vector<Rational> vg_a, vg_b;   // kappa = 1..tau
  std::vector<bool> implication_ok;   // per kappa
};

// Definition-3 pointwise check between equal-n perfect-news specs.
CompareAC compare_ac(const BinaryChoiceSpec& a, const BinaryChoiceSpec& b);

bool lr_dominates(const std::vector<Rational>& hi, const std::vector<Rational>& lo);

struct NewsKind {
  bool aggregate_only = false;       // P(V=v | S=s, W=w) == P(V=v | W=w)
  bool distributional_only = false;  // P(W=w | S=s) == P(W=w)
};

NewsKind news_kind_check(const ExplicitProblem& problem);

struct AdversarializeResult {
  Payoffs payoffs;                // (v_W', v_L') with ratio at the interval midpoint
  Rational prior_winner_prob;     // P(W_h)
  Rational pivotal_winner_prob;   // P* of the construction
  ExplicitProblem repayoffed;     // classification witness
  CorrelationReport report;       // classify(repayoffed): Adverse
};

// For distributional-only problems: payoffs under which the problem turns
// adverse while the optimal policy stays ex ante optimal.
AdversarializeResult adversarialize(const ExplicitProblem& problem);

struct EliteAdverseReport {
  bool holds = false;
  bool minority = false;          // e < tau
  Rational elite_value;           // condition (b) conditional payoff
  Rational nonelite_value;        // condition (c) conditional payoff
};

EliteAdverseReport elite_adverse(const EliteSpec& spec);

// V_i^d for a non-elite voter conditional on tau-e informed good non-elites
// and silence elsewhere, as a function of the elite count.
Rational elite_nonelite_conditional(const BinaryChoiceSpec& base, int e);

}  // namespace zsv
