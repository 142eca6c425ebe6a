#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "zsv/oracle.hpp"
#include "zsv/presets.hpp"
#include "zsv/simulate.hpp"

using namespace zsv;

TEST_CASE("brute-force gap on the small fixture") {
  ExplicitProblem pr = realize_binary(presets::two_winners_n3());
  StrategyProfile s0 = StrategyProfile::cutoff(3, 0);
  // hand algebra: (2 lambda / 3)(3 lambda - 1)
  CHECK(oracle::brute_force_gap(pr, s0, 0, Rational(1, 4)) == Rational(-1, 24));
  CHECK(oracle::brute_force_gap(pr, s0, 0, Rational(1, 2)) == Rational(1, 6));
  // re-dilution is part of the contract: the problem was realized at 1/4
  CHECK(oracle::brute_force_gap(pr, s0, 0, Rational(1, 10)) ==
        2 * Rational(1, 10) / 3 * (3 * Rational(1, 10) - 1));
}

TEST_CASE("never-pivotal profiles have a zero gap") {
  ExplicitProblem pr = realize_binary(presets::single_loser_n5());
  StrategyProfile s1 = StrategyProfile::cutoff(5, 5);
  CHECK(oracle::brute_force_gap(pr, s1, 0, Rational(1, 10)) == 0);
}

TEST_CASE("symmetric mixing agrees across the oracle and the fast path") {
  BinaryChoiceSpec spec = presets::rare_windfall_n5();
  ExplicitProblem pr = realize_binary(spec);
  ZTable z = ZTable::from_spec(spec);
  StrategyProfile half = StrategyProfile::symmetric(5, Rational(1, 2));
  for (const Rational& lam : {Rational(1, 4), Rational(3, 5)})
    CHECK(oracle::brute_force_gap(pr, half, 2, lam) == payoff_gap(z, half, 2, lam));
}

TEST_CASE("oracle size guard") {
  BinaryChoiceSpec spec =
      presets::fixed_fraction(Rational(2, 3), {Rational(2), Rational(3)}, 9);
  ExplicitProblem pr = realize_binary(spec);
  CHECK_THROWS_AS(
      oracle::brute_force_gap(pr, StrategyProfile::cutoff(9, 0), 0, Rational(1, 4)),
      std::invalid_argument);
}

TEST_CASE("pure-profile enumeration on the small fixture") {
  ExplicitProblem pr = realize_binary(presets::two_winners_n3());

  auto find = [](const std::vector<oracle::PureEquilibrium>& all,
                 const std::vector<int>& bits) -> const oracle::PureEquilibrium& {
    for (const auto& pe : all) {
      bool match = true;
      for (size_t i = 0; i < bits.size(); ++i)
        if ((sgn(pe.profile.sigma[i]) > 0) != (bits[i] == 1)) match = false;
      if (match) return pe;
    }
    throw std::runtime_error("profile not found");
  };

  auto low = oracle::enumerate_pure_equilibria(pr, Rational(1, 4));
  REQUIRE(low.size() == 8);
  CHECK(find(low, {0, 0, 0}).is_equilibrium);
  CHECK(find(low, {0, 0, 0}).is_strict);
  CHECK(find(low, {1, 1, 1}).is_equilibrium);
  CHECK(find(low, {0, 0, 0}).p_star_win == Rational(1, 16));
  CHECK(find(low, {1, 1, 1}).p_star_win == 1);

  // above the threshold the suspicious profile drops out
  auto high = oracle::enumerate_pure_equilibria(pr, Rational(2, 5));
  CHECK(!find(high, {0, 0, 0}).is_equilibrium);
  CHECK(find(high, {1, 1, 1}).is_equilibrium);
}

TEST_CASE("cross checks match on pinned quantities") {
  ExplicitProblem intro = realize_binary(presets::two_winners_n3());
  StrategyProfile s0 = StrategyProfile::cutoff(3, 0);
  StrategyProfile s1 = StrategyProfile::cutoff(3, 3);

  oracle::CrossCheckInput in;
  in.problem = &intro;
  in.profile = &s0;
  in.kappa = 1;
  oracle::OracleReport vg_rep = oracle::cross_check("vg", in);
  CHECK(vg_rep.match);
  CHECK(vg_rep.definitional_value == Rational(-1, 2));

  StrategyProfile half5 = StrategyProfile::symmetric(5, Rational(1, 2));
  oracle::CrossCheckInput piv;
  piv.profile = &half5;
  piv.g = 1;
  piv.m = 1;
  oracle::OracleReport piv_rep = oracle::cross_check("pivotal", piv);
  CHECK(piv_rep.match);
  CHECK(piv_rep.definitional_value == Rational(3, 8));  // binom(3,1)(1/2)(1/2)^2

  in.profile = &s1;
  oracle::OracleReport out_rep = oracle::cross_check("outcome", in);
  CHECK(out_rep.match);
  CHECK(out_rep.definitional_value == 1);

  CHECK_THROWS_AS(oracle::cross_check("nonsense", in), std::invalid_argument);
}

TEST_CASE("every registered quantity matches on every fixture") {
  std::mt19937 rng(11);
  std::vector<BinaryChoiceSpec> fixtures = {
      presets::two_winners_n3(), presets::aggregate_uniform_n5(),
      presets::rare_windfall_n5(), presets::common_value_n3(),
      presets::single_loser_n5()};
  for (const auto& spec : fixtures) {
    ExplicitProblem pr = realize_binary(spec);
    StrategyProfile prof = zsv::testing::random_profile(rng, spec.n);
    oracle::CrossCheckInput in;
    in.problem = &pr;
    in.profile = &prof;
    in.voter = 0;
    in.lambda = zsv::testing::random_lambda(rng);
    in.g = 1;
    in.m = 1;
    in.kappa = std::min(1, spec.tau());
    for (const char* q : {"gap", "pivotal", "z", "vg", "outcome"})
      CHECK(oracle::cross_check(q, in).match);
  }
}

TEST_CASE("advantageous problems elect the optimal policy in every pure equilibrium") {
  // finite-lambda surrogate of the converse direction: every verified pure
  // profile elects the optimal policy with probability >= 1 - 5 lambda n
  std::vector<BinaryChoiceSpec> fixtures = {
      presets::aggregate_uniform_n5(),
      presets::fixed_fraction(Rational(2, 3), {Rational(2), Rational(1)}, 5)};
  for (BinaryChoiceSpec spec : fixtures) {
    for (const Rational& lam : {Rational(1, 1000), Rational(1, 10000)}) {
      spec.lambda = lam;
      ExplicitProblem pr = realize_binary(spec);
      Rational floor = 1 - 5 * lam * spec.n;
      for (const auto& pe : oracle::enumerate_pure_equilibria(pr, lam)) {
        if (!pe.is_equilibrium) continue;
        CHECK(pe.p_star_win >= floor);
      }
    }
  }
}

TEST_CASE("advantageous robustness extends to n = 7") {
  BinaryChoiceSpec spec =
      presets::fixed_fraction(Rational(2, 3), {Rational(2), Rational(1)}, 7);
  Rational lam(1, 1000);
  spec.lambda = lam;
  ExplicitProblem pr = realize_binary(spec);
  Rational floor = 1 - 5 * lam * spec.n;
  int equilibria = 0;
  for (const auto& pe : oracle::enumerate_pure_equilibria(pr, lam)) {
    if (!pe.is_equilibrium) continue;
    ++equilibria;
    CHECK(pe.p_star_win >= floor);
  }
  CHECK(equilibria > 0);
}
