#pragma once

#include "zsv/model.hpp"

namespace zsv::presets {

// Three voters, always exactly two winners, payoffs (2, 3). Adversely
// correlated; the canonical small fixture.
BinaryChoiceSpec two_winners_n3(const Rational& lambda = Rational(1, 4));

// Five voters, winner count uniform on {1..5}, unit payoffs, aggregate
// news. Advantageously correlated.
BinaryChoiceSpec aggregate_uniform_n5(const Rational& lambda = Rational(1, 4));

// Five voters, one winner with probability 63/64 and a rare everyone-wins
// state, payoffs (63, 16). Strongly adversely correlated with V^G(tau) > 0,
// so the suspicious construction needs an interior sanguine block and the
// symmetric construction mixes.
BinaryChoiceSpec rare_windfall_n5(const Rational& lambda = Rational(1, 4));

// Three voters, pure common value: everyone wins or everyone loses with
// equal odds, payoffs (2, 1). Z_B(tau,tau) < 0, forcing the interior-mixing
// branch of the optimal-policy construction.
BinaryChoiceSpec common_value_n3(const Rational& lambda = Rational(1, 4));

// Five voters, exactly four winners, payoffs (2, 1). Bad news can never
// reach tau voters, so the optimal-policy profile is an equilibrium with a
// gap of exactly zero.
BinaryChoiceSpec single_loser_n5(const Rational& lambda = Rational(1, 4));

// ceil(q n) winners, perfect news.
BinaryChoiceSpec fixed_fraction(const Rational& q, const Payoffs& payoffs, int n,
                                const Rational& lambda = Rational(1, 4));

// The n = 7 member of the 2/3-fraction family with payoffs (2, 3).
BinaryChoiceSpec fixed_fraction_n7(const Rational& lambda = Rational(1, 4));

// Seven voters, one elite; winner count 3 with probability 55/56 and 7
// otherwise, payoffs (2, 1). Elite-adverse.
EliteSpec elite_n7(const Rational& lambda = Rational(1, 1000));

// Electorate size uniform on {3, 5}, 2/3-fraction winners, payoffs (2, 3).
PopulationSpec population_3_5(const Rational& lambda = Rational(1, 1000));

}  // namespace zsv::presets
