#include "zsv/presets.hpp"

#include "zsv/probability.hpp"

namespace zsv::presets {

namespace {

BinaryChoiceSpec degenerate(int n, int w, const Payoffs& payoffs, SignalTech tech,
                            const Rational& lambda) {
  BinaryChoiceSpec spec;
  spec.n = n;
  spec.winner_dist.assign(n + 1, Rational(0));
  spec.winner_dist[w] = 1;
  spec.payoffs = payoffs;
  spec.signal_tech = tech;
  spec.lambda = lambda;
  return spec;
}

}  // namespace

BinaryChoiceSpec two_winners_n3(const Rational& lambda) {
  return degenerate(3, 2, {Rational(2), Rational(3)}, SignalTech::DistributionalNews,
                    lambda);
}

BinaryChoiceSpec aggregate_uniform_n5(const Rational& lambda) {
  BinaryChoiceSpec spec;
  spec.n = 5;
  spec.winner_dist = {Rational(0), Rational(1, 5), Rational(1, 5), Rational(1, 5),
                      Rational(1, 5), Rational(1, 5)};
  spec.payoffs = {Rational(1), Rational(1)};
  spec.signal_tech = SignalTech::AggregateNews;
  spec.lambda = lambda;
  return spec;
}

BinaryChoiceSpec rare_windfall_n5(const Rational& lambda) {
  BinaryChoiceSpec spec;
  spec.n = 5;
  spec.winner_dist.assign(6, Rational(0));
  spec.winner_dist[1] = Rational(63, 64);
  spec.winner_dist[5] = Rational(1, 64);
  spec.payoffs = {Rational(63), Rational(16)};
  spec.signal_tech = SignalTech::PerfectNews;
  spec.lambda = lambda;
  return spec;
}

BinaryChoiceSpec common_value_n3(const Rational& lambda) {
  BinaryChoiceSpec spec;
  spec.n = 3;
  spec.winner_dist.assign(4, Rational(0));
  spec.winner_dist[0] = Rational(1, 2);
  spec.winner_dist[3] = Rational(1, 2);
  spec.payoffs = {Rational(2), Rational(1)};
  spec.signal_tech = SignalTech::PerfectNews;
  spec.lambda = lambda;
  return spec;
}

BinaryChoiceSpec single_loser_n5(const Rational& lambda) {
  return degenerate(5, 4, {Rational(2), Rational(1)}, SignalTech::PerfectNews, lambda);
}

BinaryChoiceSpec fixed_fraction(const Rational& q, const Payoffs& payoffs, int n,
                                const Rational& lambda) {
  long w = fixed_fraction_winners(n, q);
  return degenerate(n, static_cast<int>(w), payoffs, SignalTech::PerfectNews, lambda);
}

BinaryChoiceSpec fixed_fraction_n7(const Rational& lambda) {
  return fixed_fraction(Rational(2, 3), {Rational(2), Rational(3)}, 7, lambda);
}

EliteSpec elite_n7(const Rational& lambda) {
  EliteSpec spec;
  spec.base.n = 7;
  spec.base.winner_dist.assign(8, Rational(0));
  spec.base.winner_dist[3] = Rational(55, 56);
  spec.base.winner_dist[7] = Rational(1, 56);
  spec.base.payoffs = {Rational(2), Rational(1)};
  spec.base.signal_tech = SignalTech::PerfectNews;
  spec.base.lambda = lambda;
  spec.elite_count = 1;
  return spec;
}

PopulationSpec population_3_5(const Rational& lambda) {
  PopulationSpec spec;
  spec.support = {3, 5};
  spec.probs = {Rational(1, 2), Rational(1, 2)};
  spec.payoffs = {Rational(2), Rational(3)};
  spec.fraction = Rational(2, 3);
  spec.lambda = lambda;
  return spec;
}

}  // namespace zsv::presets
