#pragma once

#include <random>

#include "zsv/model.hpp"
#include "zsv/probability.hpp"

namespace zsv::testing {

// Random validated specs, exact-rational throughout. Draws are rejected
// until every model assumption holds, so downstream code never sees a
// degenerate fixture.

inline Rational random_lambda(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(1, 63);
  return ratio(num(rng), 64);
}

inline StrategyProfile random_profile(std::mt19937& rng, int n) {
  std::uniform_int_distribution<int> num(0, 8);
  StrategyProfile p;
  for (int i = 0; i < n; ++i) p.sigma.push_back(ratio(num(rng), 8));
  return p;
}

inline StrategyProfile random_pure_profile(std::mt19937& rng, int n) {
  std::uniform_int_distribution<int> bit(0, 1);
  StrategyProfile p;
  for (int i = 0; i < n; ++i) p.sigma.push_back(Rational(bit(rng)));
  return p;
}

inline BinaryChoiceSpec random_perfect_spec(std::mt19937& rng, int n,
                                            SignalTech tech = SignalTech::PerfectNews) {
  std::uniform_int_distribution<int> weight(0, 9);
  std::uniform_int_distribution<int> pay(1, 12);
  for (int attempt = 0; attempt < 5000; ++attempt) {
    BinaryChoiceSpec spec;
    spec.n = n;
    spec.signal_tech = tech;
    spec.lambda = random_lambda(rng);
    long total = 0;
    std::vector<long> w(n + 1);
    for (int k = 0; k <= n; ++k) {
      w[k] = weight(rng);
      total += w[k];
    }
    if (total == 0) continue;
    for (int k = 0; k <= n; ++k) spec.winner_dist.push_back(ratio(w[k], total));
    spec.payoffs = {Rational(pay(rng)), Rational(pay(rng))};
    if (tech == SignalTech::DistributionalNews) {
      spec.winner_dist.assign(n + 1, Rational(0));
      std::uniform_int_distribution<int> wc(1, n - 1);
      spec.winner_dist[wc(rng)] = 1;
    }
    if (!validate_spec(spec).ok()) continue;
    // reject indifference in any analysis cell (assumption 3a, table scope)
    ZTable z = ZTable::from_spec(spec);
    bool strict = true;
    for (int g = 0; g <= z.tau() && strict; ++g)
      for (int m = g; m <= z.tau() + g && strict; ++m)
        if (sgn(z.p_g_given_m(g, m)) != 0 && sgn(z.z(g, m)) == 0) strict = false;
    if (!strict) continue;
    return spec;
  }
  throw std::runtime_error("random_perfect_spec: rejection sampling exhausted");
}

inline BinaryChoiceSpec random_aggregate_spec(std::mt19937& rng, int n) {
  return random_perfect_spec(rng, n, SignalTech::AggregateNews);
}

}  // namespace zsv::testing
