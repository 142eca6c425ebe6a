#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "zsv/correlation.hpp"
#include "zsv/oracle.hpp"
#include "zsv/presets.hpp"

using namespace zsv;

TEST_CASE("pivotal probabilities on pinned cases") {
  // all-suspicious: pivotal iff every optimal-policy vote is informed good
  CHECK(pivotal_prob(StrategyProfile::cutoff(3, 0), 0, 1, 1) == Rational(1));
  CHECK(pivotal_prob(StrategyProfile::cutoff(3, 0), 0, 0, 0) == Rational(0));
  // symmetric closed form: binom(n-1-m, tau-g) a^(tau-g) (1-a)^(tau-(m-g))
  CHECK(pivotal_prob(StrategyProfile::symmetric(5, Rational(1, 2)), 0, 1, 1) ==
        Rational(3, 8));
  // one sanguine, one suspicious neighbour
  StrategyProfile mixed = StrategyProfile::cutoff(3, 1);
  CHECK(pivotal_prob(mixed, 2, 0, 0) == Rational(1));
}

TEST_CASE("pivotal probability edge behaviour") {
  StrategyProfile p = StrategyProfile::symmetric(5, Rational(1, 3));
  CHECK(pivotal_prob(p, 0, 3, 3) == Rational(0));   // g > tau
  CHECK(pivotal_prob(p, 0, 1, 4) == Rational(0));   // m > tau + g
  CHECK(pivotal_prob(p, 0, 1, 0) == Rational(0));   // m < g
  CHECK_THROWS_AS(pivotal_prob(p, 7, 1, 1), std::out_of_range);
}

TEST_CASE("the pivotal DP equals the literal subset sum") {
  std::mt19937 rng(31);
  for (int n : {3, 5, 7}) {
    const int tau = (n - 1) / 2;
    for (int rep = 0; rep < 30; ++rep) {
      StrategyProfile prof = rep % 3 == 0 ? zsv::testing::random_pure_profile(rng, n)
                                          : zsv::testing::random_profile(rng, n);
      PivotalTable table(prof, 0);
      for (int g = 0; g <= tau; ++g)
        for (int m = g; m <= tau + g; ++m)
          CHECK(table.prob(g, m) == oracle::literal_pivotal(prof, 0, g, m));
    }
  }
}

TEST_CASE("Z values on pinned fixtures") {
  BinaryChoiceSpec intro = presets::two_winners_n3();
  CHECK(z_value(intro, 1, 1, ZMode::GoodNews) == Rational(-1, 3));
  CHECK(z_value(intro, 1, 2, ZMode::GoodNews) == Rational(4, 3));
  CHECK(z_value(intro, 0, 1, ZMode::GoodNews) == Rational(2, 3));
  // bad-news form: Z_B(b, m) = Z(m-b, m)
  CHECK(z_value(intro, 1, 1, ZMode::BadNews) == Rational(2, 3));
  CHECK(z_value(presets::aggregate_uniform_n5(), 1, 2, ZMode::GoodNews) == Rational(0));
}

TEST_CASE("probability factors of Z sum to one for every reachable m") {
  for (const BinaryChoiceSpec& spec :
       {presets::rare_windfall_n5(), presets::aggregate_uniform_n5()}) {
    ExplicitProblem pr = realize_binary(spec);
    const int n = pr.n;
    // full-range conditional computed directly from the states
    for (int m = 0; m <= n - 1; ++m) {
      Rational mass(0), total(0);
      std::vector<Rational> per_g(n, Rational(0));
      for (const auto& st : pr.states) {
        if (st.signals[0] != 0) continue;
        int g = 0, mm = 0;
        for (int j = 1; j < n; ++j) {
          if (st.signals[j] == 0) continue;
          ++mm;
          g += pr.is_good(st.signals[j]);
        }
        if (mm == m) {
          mass += st.prob;
          per_g[g] += st.prob;
        }
      }
      if (sgn(mass) == 0) continue;
      for (int g = 0; g < n; ++g) total += per_g[g] / mass;
      CHECK(total == 1);
    }
  }
}

TEST_CASE("closed-form V^G agrees with the table and the oracle") {
  std::mt19937 rng(17);
  for (int n : {3, 5, 7}) {
    for (int rep = 0; rep < 5; ++rep) {
      BinaryChoiceSpec spec = zsv::testing::random_perfect_spec(rng, n);
      ExplicitProblem pr = realize_binary(spec);
      ZTable z = ZTable::from_spec(spec);
      ZTable ze = ZTable::from_explicit(pr);
      for (int k = 0; k <= spec.tau(); ++k) {
        Rational closed = vg_closed_form(spec, k);
        CHECK(closed == z.vg(k));
        CHECK(closed == ze.vg(k));
        CHECK(closed == oracle::literal_vg(pr, 0, k));
      }
    }
  }
}

TEST_CASE("V^G(0) is the prior payoff difference") {
  std::mt19937 rng(23);
  for (int n : {3, 5}) {
    BinaryChoiceSpec spec = zsv::testing::random_perfect_spec(rng, n);
    CHECK(vg(spec, 0) == spec.prior_gap());
  }
  CHECK(vg(presets::aggregate_uniform_n5(), 0) ==
        presets::aggregate_uniform_n5().prior_gap());
}

TEST_CASE("V^G and Z are invariant to the dilution level") {
  for (const Rational& lam : {Rational(1, 4), Rational(1, 7), Rational(9, 10)}) {
    BinaryChoiceSpec spec = presets::rare_windfall_n5(lam);
    ZTable z = ZTable::from_explicit(realize_binary(spec));
    CHECK(z.vg(1) == Rational(-693, 68));
    CHECK(z.z(1, 1) == Rational(-693, 320));
    CHECK(z.z(2, 2) == Rational(63, 64));
  }
}

TEST_CASE("aggregate posterior concentrates on favourable counts") {
  ZTable z = ZTable::from_spec(presets::aggregate_uniform_n5());
  CHECK(z.vg(1) == Rational(3, 5));
  CHECK(z.vg(2) == Rational(3, 5));
}

TEST_CASE("large-election kernel at pinned points") {
  Payoffs v{Rational(2), Rational(3)};
  CHECK(vn_kernel(3, Rational(2, 3), v, 1, 0) == Rational(-1, 2));
  CHECK(vn_kernel(3, Rational(2, 3), v, 1, 0) == vg(presets::two_winners_n3(), 1));
  // V_n(0,0) is the prior
  for (int n : {3, 9, 101}) {
    long w = fixed_fraction_winners(n, Rational(2, 3));
    CHECK(vn_kernel(n, Rational(2, 3), v, 0, 0) ==
          Rational(w) / n * v.vw - Rational(n - w) / n * v.vl);
  }
  // the adverse tail V_n(tau, 0) < 0 is exactly the finite-n criterion; the
  // ceil(qn) jump makes n = 5 advantageous in this family even though the
  // ratio exceeds rho
  for (int n = 3; n <= 41; n += 2) {
    bool adverse = sgn(vn_kernel(n, Rational(2, 3), v, (n - 1) / 2, 0)) < 0;
    CHECK(adverse == adverse_at_n(Rational(2, 3), v, n));
    if (n != 5) CHECK(adverse);
  }
}

TEST_CASE("kernel monotonicity: decreasing in g, increasing in b") {
  // strictness in g holds up to the boundary b = n - w, where the kernel is
  // constant at vw (every loser already revealed)
  Payoffs v{Rational(2), Rational(3)};
  for (int n : {7, 15}) {
    long w = fixed_fraction_winners(n, Rational(2, 3));
    const int tau = (n - 1) / 2;
    for (int g = 0; g <= tau; ++g)
      for (int b = 0; b <= static_cast<int>(n - w); ++b) {
        if (g + 1 <= tau && b < n - w)
          CHECK(vn_kernel(n, Rational(2, 3), v, g + 1, b) <
                vn_kernel(n, Rational(2, 3), v, g, b));
        if (b + 1 <= n - w)
          CHECK(vn_kernel(n, Rational(2, 3), v, g, b + 1) >
                vn_kernel(n, Rational(2, 3), v, g, b));
      }
  }
}

TEST_CASE("kernel range errors") {
  Payoffs v{Rational(2), Rational(3)};
  CHECK_THROWS_AS(vn_kernel(7, Rational(2, 3), v, 4, 0), std::out_of_range);
  CHECK_THROWS_AS(vn_kernel(7, Rational(2, 3), v, 0, 5), std::out_of_range);
}
