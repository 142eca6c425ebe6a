#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "zsv/rational.hpp"

namespace zsv {

// Signal technologies for parametric binary-payoff problems.
//  PerfectNews:        an informed voter learns her own winner/loser status.
//  AggregateNews:      an informed voter learns the realized winner count.
//  DistributionalNews: degenerate winner count plus perfect news, so signals
//                      carry no information about the aggregate.
enum class SignalTech { PerfectNews, AggregateNews, DistributionalNews };

struct Payoffs {
  Rational vw;  // gain of a winner under the optimal policy, > 0
  Rational vl;  // loss of a loser under the optimal policy, > 0
};

// Parametric exchangeable problem: n voters decide by simple majority, each
// voter is a winner/loser of the optimal policy, the winner count follows
// winner_dist, and each voter is informed independently with probability
// lambda.
struct BinaryChoiceSpec {
  int n = 0;
  std::vector<Rational> winner_dist;  // mass on {0,...,n}, size n+1
  Payoffs payoffs;
  SignalTech signal_tech = SignalTech::PerfectNews;
  Rational lambda;

  int tau() const { return (n - 1) / 2; }
  Rational expected_winners() const;
  // prior payoff difference of the optimal over the inferior policy
  Rational prior_gap() const;
};

// Fully enumerated finite problem with exact rational state probabilities.
// Signal label 0 is the uninformative signal; informative labels partition
// into good_signals and bad_signals.
struct ExplicitState {
  std::vector<Rational> payoff_diff;  // V_i^d per voter
  std::vector<int> signals;           // 0 = uninformative
  Rational prob;
};

struct ExplicitProblem {
  int n = 0;
  std::vector<ExplicitState> states;
  std::vector<int> good_signals;
  std::vector<int> bad_signals;

  int tau() const { return (n - 1) / 2; }
  bool is_good(int label) const;
  bool is_bad(int label) const;
  bool is_informative(int label) const { return label != 0; }

  // counts over all n voters in one state
  int informed_count(const ExplicitState& s) const;
  int good_count(const ExplicitState& s) const;
  int bad_count(const ExplicitState& s) const;
};

// Two-group extension: voters 0..elite_count-1 are the elites. Winners nest:
// whenever a non-elite wins, every elite wins.
struct EliteSpec {
  BinaryChoiceSpec base;  // PerfectNews
  int elite_count = 0;
};

// Random electorate size over a finite odd support; every size shares the
// fixed-fraction winner rule and the payoffs below.
struct PopulationSpec {
  std::vector<int> support;       // odd integers >= 3, increasing
  std::vector<Rational> probs;    // Q over the support
  Payoffs payoffs;
  Rational fraction;              // ceil(fraction * n) winners at size n
  Rational lambda;

  int n0() const { return support.empty() ? 0 : support.front(); }
  Rational mean_size() const;
  BinaryChoiceSpec spec_for(int n) const;
};

struct ValidationCheck {
  std::string name;
  bool pass = false;
  std::string detail;  // counterexample or explanation on failure
};

struct ValidationReport {
  bool malformed = false;          // structural defect, not an assumption failure
  std::string malformed_reason;
  std::vector<ValidationCheck> checks;

  bool ok() const;
  std::string summary() const;
};

ValidationReport validate_spec(const BinaryChoiceSpec& spec);
ValidationReport validate_spec(const ExplicitProblem& problem);
ValidationReport validate_spec(const EliteSpec& spec);
ValidationReport validate_spec(const PopulationSpec& spec);

// States exceeding this bound refuse to enumerate; see realize_binary.
constexpr long kEnumerationCap = 2000000;

// Thrown when an enumeration would exceed kEnumerationCap.
struct EnumerationCapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Explicit enumeration of a parametric spec, dilution included. The result
// passes validate_spec whenever the spec itself does.
ExplicitProblem realize_binary(const BinaryChoiceSpec& spec);

// Nested-winner enumeration of an elite spec (PerfectNews only).
ExplicitProblem realize_elite(const EliteSpec& spec);

// The informed core of a spec: every voter informed in every state.
ExplicitProblem realize_core(const BinaryChoiceSpec& spec);

// Independently replaces each voter's signal by the uninformative one with
// probability 1 - lambda. Requires an all-informed core and lambda in (0,1).
ExplicitProblem dilute(const ExplicitProblem& core, const Rational& lambda);

// Inverse of dilute: recovers (core, lambda) exactly.
std::pair<ExplicitProblem, Rational> extract_core(const ExplicitProblem& full);

// true iff the per-voter payoff differences take exactly the two values
// +payoffs.vw and -payoffs.vl across all states.
bool detect_binary_payoffs(const ExplicitProblem& problem, Payoffs* out);

}  // namespace zsv
