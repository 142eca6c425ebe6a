#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "zsv/io.hpp"
#include "zsv/presets.hpp"
#include "zsv/simulate.hpp"

using namespace zsv;

TEST_CASE("exact outcomes on the small fixture") {
  ExplicitProblem pr = realize_binary(presets::two_winners_n3());
  // all-sanguine: at most one informed loser votes against, never a majority
  OutcomeDistribution good = exact_outcome(pr, StrategyProfile::cutoff(3, 3));
  CHECK(good.p_star_win == 1);
  // all-suspicious: the optimal policy needs both winners informed
  OutcomeDistribution bad = exact_outcome(pr, StrategyProfile::cutoff(3, 0));
  CHECK(bad.p_star_win == Rational(1, 16));  // lambda^2 at lambda = 1/4
  Rational total(0);
  for (const auto& p : bad.vote_dist) total += p;
  CHECK(total == 1);
}

TEST_CASE("the public-information benchmark bound holds under sigma^1") {
  for (const BinaryChoiceSpec& spec :
       {presets::two_winners_n3(), presets::aggregate_uniform_n5(),
        presets::rare_windfall_n5()}) {
    ExplicitProblem pr = realize_binary(spec);
    OutcomeDistribution out = exact_outcome(pr, StrategyProfile::cutoff(spec.n, spec.n));
    CHECK(out.p_star_win >= rat_pow(1 - spec.lambda, spec.n));
  }
}

TEST_CASE("majority-suspicious profiles keep the inferior policy ahead") {
  std::mt19937 rng(3131);
  for (const BinaryChoiceSpec& spec :
       {presets::two_winners_n3(), presets::rare_windfall_n5()}) {
    ExplicitProblem pr = realize_binary(spec);
    const int tau = spec.tau();
    for (int rep = 0; rep < 10; ++rep) {
      StrategyProfile prof = zsv::testing::random_pure_profile(rng, spec.n);
      int zeros = 0;
      for (const auto& s : prof.sigma) zeros += sgn(s) == 0;
      if (zeros < tau + 1) continue;
      OutcomeDistribution out = exact_outcome(pr, prof);
      CHECK(1 - out.p_star_win >= rat_pow(1 - spec.lambda, spec.n));
    }
  }
}

TEST_CASE("monte carlo is deterministic given the seed") {
  ExplicitProblem pr = realize_binary(presets::two_winners_n3());
  StrategyProfile s0 = StrategyProfile::cutoff(3, 0);
  OutcomeDistribution a = monte_carlo(pr, s0, 50000, 1234);
  OutcomeDistribution b = monte_carlo(pr, s0, 50000, 1234);
  CHECK(a.estimate == b.estimate);
  OutcomeDistribution c = monte_carlo(pr, s0, 50000, 1235);
  CHECK(a.estimate != c.estimate);  // different stream
}

TEST_CASE("monte carlo agrees with the exact value within four standard errors") {
  std::mt19937 rng(515);
  for (const BinaryChoiceSpec& spec :
       {presets::two_winners_n3(), presets::aggregate_uniform_n5()}) {
    ExplicitProblem pr = realize_binary(spec);
    StrategyProfile prof = zsv::testing::random_profile(rng, spec.n);
    OutcomeDistribution exact = exact_outcome(pr, prof);
    OutcomeDistribution mc = monte_carlo(pr, prof, 200000, 42);
    double se = mc.ci_halfwidth / 1.959963984540054;
    CHECK(std::abs(mc.estimate - to_double(exact.p_star_win)) <= 4.0 * se + 1e-9);
  }
}

TEST_CASE("the fast pivotal-conditional gap matches the exact machinery at small n") {
  for (int n : {3, 7, 9}) {
    BinaryChoiceSpec spec =
        presets::fixed_fraction(Rational(2, 3), {Rational(2), Rational(3)}, n);
    ZTable z = ZTable::from_spec(spec);
    StrategyProfile s0 = StrategyProfile::cutoff(n, 0);
    long w = fixed_fraction_winners(n, Rational(2, 3));
    for (const Rational& lam : {Rational(1, 4), Rational(1, 2), Rational(3, 5)}) {
      Rational exact_cond =
          payoff_gap(z, s0, 0, lam) / pivotal_probability_total(z, s0, 0, lam);
      double fast = frac::gap_sigma0(n, w, 2.0, 3.0, to_double(lam));
      CHECK(std::abs(to_double(exact_cond) - fast) < 1e-12);
    }
  }
}

TEST_CASE("large fixed-fraction elections favour the inferior policy") {
  // sigma^0 at n = 1001, lambda = 1/4: informed winners almost never reach a
  // majority
  long w = fixed_fraction_winners(1001, Rational(2, 3));
  double tail = frac::pstar_win_sigma0(1001, w, 0.25);
  CHECK(1.0 - tail >= 0.99);
  double mc = frac::monte_carlo_sigma0(1001, w, 0.25, 50000, 7);
  CHECK(1.0 - mc >= 0.99);
}

TEST_CASE("per-trial seeding makes results independent of worker partitioning") {
  ExplicitProblem pr = realize_binary(presets::two_winners_n3());
  StrategyProfile s0 = StrategyProfile::cutoff(3, 0);
  OutcomeDistribution whole = monte_carlo(pr, s0, 1000, 99);
  OutcomeDistribution worker_a = monte_carlo(pr, s0, 500, 99, 0);
  OutcomeDistribution worker_b = monte_carlo(pr, s0, 500, 99, 500);
  long wins_whole = std::lround(whole.estimate * 1000);
  long wins_split =
      std::lround(worker_a.estimate * 500) + std::lround(worker_b.estimate * 500);
  CHECK(wins_whole == wins_split);
}

TEST_CASE("lambda sweep flags the strictness boundary of the small fixture") {
  BinaryChoiceSpec spec = presets::two_winners_n3();
  ExplicitProblem pr = realize_binary(spec);
  ZTable z = ZTable::from_spec(spec);
  std::vector<Rational> grid;
  for (int k = 1; k <= 6; ++k) grid.push_back(ratio(5 * k, 100));  // 0.05 .. 0.30
  grid.push_back(Rational(35, 100));
  auto rows = sweep_lambda(z, pr, ProfileRule::Suspicious, grid);
  REQUIRE(rows.size() == 7);
  for (size_t i = 0; i < 6; ++i) {
    CHECK(rows[i].is_equilibrium);
    CHECK(rows[i].pi_min_margin > 0.0);
  }
  CHECK(!rows[6].is_equilibrium);
}

TEST_CASE("good-rule sweeps report certain optimal wins in the mild family") {
  BinaryChoiceSpec spec =
      presets::fixed_fraction(Rational(2, 3), {Rational(2), Rational(1)}, 5);
  ExplicitProblem pr = realize_binary(spec);
  ZTable z = ZTable::from_spec(spec);
  std::vector<Rational> grid = {Rational(1, 10), Rational(1, 4), Rational(1, 2)};
  auto rows = sweep_lambda(z, pr, ProfileRule::Good, grid);
  for (const auto& row : rows) {
    CHECK(row.is_equilibrium);
    CHECK(row.p_star_win == 1.0);
  }
}

TEST_CASE("population-size sweep reports the bound and the first verifying size") {
  FracSweep res = sweep_n(Rational(2, 3), {Rational(2), Rational(3)}, Rational(1, 4),
                          {101, 501, 1001});
  CHECK(std::abs(res.bound - 2.0 / 3.0) < 1e-12);
  REQUIRE(res.first_n.has_value());
  CHECK(*res.first_n == 3);
  REQUIRE(res.rows.size() == 3);
  double prev_lose = 0.0;
  for (const auto& row : res.rows) {
    CHECK(row.is_equilibrium);
    double lose = 1.0 - row.p_star_win;
    CHECK(lose >= prev_lose);
    prev_lose = lose;
  }
}

TEST_CASE("csv header follows the contract") {
  std::string csv = sweep_csv({});
  CHECK(csv == "param,profile,pi_min_margin,is_equilibrium,p_star_win\n");
}
