#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "zsv/correlation.hpp"
#include "zsv/oracle.hpp"
#include "zsv/presets.hpp"

using namespace zsv;

TEST_CASE("classification of the pinned fixtures") {
  CorrelationReport intro = classify(presets::two_winners_n3());
  CHECK(intro.adverse);
  CHECK(*intro.witness_min == 1);
  CHECK(*intro.kappa_star == 1);
  CHECK(intro.kstar.sign == KStarSign::Negative);
  CHECK(intro.kstar.neg_infinity);

  CorrelationReport agg = classify(presets::aggregate_uniform_n5());
  CHECK(!agg.adverse);
  for (size_t k = 1; k < agg.vg_values.size(); ++k) CHECK(sgn(agg.vg_values[k]) > 0);
  CHECK(agg.kstar.sign == KStarSign::Positive);
  CHECK(std::abs(agg.kstar.value - 0.2) < 1e-9);  // infimum Z(0,0) = 1/5 at theta -> 0

  CorrelationReport windfall = classify(presets::rare_windfall_n5());
  CHECK(windfall.adverse);
  CHECK(*windfall.kappa_star == 1);
  CHECK(sgn(windfall.vg_values[2]) > 0);  // V^G(tau) > 0: strong adversity is not free
  CHECK(windfall.kstar.sign == KStarSign::Negative);
  CHECK(!windfall.kstar.neg_infinity);
  REQUIRE(windfall.kstar.witness_theta.has_value());
  ZTable z = ZTable::from_spec(presets::rare_windfall_n5());
  CHECK(sgn(kstar_poly(z).eval(*windfall.kstar.witness_theta)) < 0);
}

TEST_CASE("low polarization fixed-fraction problems stay advantageous at every size") {
  Payoffs mild{Rational(2), Rational(1)};  // ratio 1/2 = rho(2/3)
  for (int n = 3; n <= 15; n += 2) {
    BinaryChoiceSpec spec = presets::fixed_fraction(Rational(2, 3), mild, n);
    CHECK(!classify(spec).adverse);
    CHECK(!adverse_at_n(Rational(2, 3), mild, n));
  }
}

TEST_CASE("K(theta) coefficients and the negative witness on the small fixture") {
  ZTable z = ZTable::from_spec(presets::two_winners_n3());
  Poly k = kstar_poly(z);
  REQUIRE(k.degree() == 1);
  CHECK(k.coeff(0) == Rational(1, 3));
  CHECK(k.coeff(1) == Rational(-1, 3));
  CHECK(k.eval(Rational(2)) == Rational(-1, 3));
}

TEST_CASE("negative leading coefficient forces K* = -infinity") {
  // V^G(tau) < 0 at tau = 3 for the 2/3-fraction problem at n = 7
  ZTable z = ZTable::from_spec(presets::fixed_fraction_n7());
  CHECK(sgn(z.z(3, 3)) < 0);
  KStarResult r = kstar(z);
  CHECK(r.sign == KStarSign::Negative);
  CHECK(r.neg_infinity);
}

TEST_CASE("exact and numeric K* methods agree in sign on random specs") {
  std::mt19937 rng(2718);
  int checked = 0;
  for (int rep = 0; rep < 300; ++rep) {
    int n = 3 + 2 * (rep % 3);
    BinaryChoiceSpec spec = zsv::testing::random_perfect_spec(rng, n);
    ZTable z = ZTable::from_spec(spec);
    KStarResult exact = kstar(z, KStarMethod::Exact);
    KStarResult numeric = kstar(z, KStarMethod::Numeric);
    CHECK(exact.sign == numeric.sign);
    ++checked;
  }
  CHECK(checked == 300);
}

TEST_CASE("classification and K* signs are consistent") {
  std::mt19937 rng(321);
  for (int rep = 0; rep < 100; ++rep) {
    int n = 3 + 2 * (rep % 3);
    CorrelationReport r = classify(zsv::testing::random_perfect_spec(rng, n));
    if (r.kstar.sign == KStarSign::Negative) CHECK(r.adverse);
    if (!r.adverse) CHECK(r.kstar.sign != KStarSign::Negative);
  }
}

TEST_CASE("aggregate news is always advantageous") {
  std::mt19937 rng(555);
  for (int rep = 0; rep < 60; ++rep) {
    int n = rep % 2 ? 3 : 5;
    BinaryChoiceSpec spec = zsv::testing::random_aggregate_spec(rng, n);
    CHECK(!classify(spec).adverse);
  }
}

TEST_CASE("critical polarization ratio") {
  CHECK(rho_critical(Rational(2, 3)) == Rational(1, 2));
  CHECK(rho_critical(Rational(1, 2)) == Rational(0));
  CHECK_THROWS_AS(rho_critical(Rational(1)), std::invalid_argument);
  // the finite-n criterion agrees with the realized classification
  CHECK(adverse_at_n(Rational(2, 3), {Rational(2), Rational(3)}, 3));
  CHECK(classify(presets::two_winners_n3()).adverse);
  // ratio at or below rho: advantageous for every tested size
  for (int n = 3; n <= 9999; n += 2)
    CHECK(!adverse_at_n(Rational(2, 3), {Rational(2), Rational(1)}, n));
}

TEST_CASE("comparative statics of the adverse-correlation preorder") {
  BinaryChoiceSpec base = presets::rare_windfall_n5();

  SUBCASE("higher polarization ratio dominates") {
    BinaryChoiceSpec milder = base;
    milder.payoffs = {Rational(63), Rational(8)};  // ratio halved
    CompareAC cmp = compare_ac(base, milder);
    CHECK(cmp.holds);
  }
  SUBCASE("reflexivity") { CHECK(compare_ac(base, base).holds); }
  SUBCASE("likelihood-ratio dominance lifts every V^G") {
    std::mt19937 rng(77);
    for (int rep = 0; rep < 40; ++rep) {
      int n = 5;
      BinaryChoiceSpec a = zsv::testing::random_perfect_spec(rng, n);
      // b shifts mass upward: multiply weights by an increasing factor
      BinaryChoiceSpec b = a;
      Rational total(0);
      for (int w = 0; w <= n; ++w) {
        b.winner_dist[w] *= Rational(w + 1);
        total += b.winner_dist[w];
      }
      for (int w = 0; w <= n; ++w) b.winner_dist[w] /= total;
      REQUIRE(lr_dominates(b.winner_dist, a.winner_dist));
      for (int k = 1; k <= a.tau(); ++k)
        CHECK(vg_closed_form(b, k) >= vg_closed_form(a, k));
      // and the preorder then points the right way
      CHECK(compare_ac(a, b).holds);
    }
  }
  SUBCASE("transitivity on sampled triples") {
    std::mt19937 rng(91);
    int seen = 0;
    for (int rep = 0; rep < 400 && seen < 25; ++rep) {
      BinaryChoiceSpec a = zsv::testing::random_perfect_spec(rng, 5);
      BinaryChoiceSpec b = zsv::testing::random_perfect_spec(rng, 5);
      BinaryChoiceSpec c = zsv::testing::random_perfect_spec(rng, 5);
      if (compare_ac(a, b).holds && compare_ac(b, c).holds) {
        CHECK(compare_ac(a, c).holds);
        ++seen;
      }
    }
    CHECK(seen > 0);
  }
  SUBCASE("mismatched sizes are rejected") {
    CHECK_THROWS_AS(compare_ac(base, presets::two_winners_n3()), std::invalid_argument);
  }
}

TEST_CASE("news-kind identities on realized problems") {
  NewsKind agg = news_kind_check(realize_binary(presets::aggregate_uniform_n5()));
  CHECK(agg.aggregate_only);
  CHECK(!agg.distributional_only);

  NewsKind intro = news_kind_check(realize_binary(presets::two_winners_n3()));
  CHECK(intro.distributional_only);
  CHECK(!intro.aggregate_only);

  // perfect news with a non-degenerate winner count carries both kinds
  NewsKind both = news_kind_check(realize_binary(presets::rare_windfall_n5()));
  CHECK(!both.aggregate_only);
  CHECK(!both.distributional_only);
}

TEST_CASE("adversarialize on the canonical distributional fixture") {
  ExplicitProblem pr = realize_binary(presets::two_winners_n3());
  AdversarializeResult res = adversarialize(pr);
  // admissible ratio interval is (1, 2); the midpoint is the original 3/2
  CHECK(res.payoffs.vl / res.payoffs.vw == Rational(3, 2));
  CHECK(res.prior_winner_prob == Rational(2, 3));
  CHECK(res.pivotal_winner_prob == Rational(1, 2));
  CHECK(res.report.adverse);
  CHECK(validate_spec(res.repayoffed).ok());
}

TEST_CASE("adversarialize rejects problems with aggregate content") {
  CHECK_THROWS_AS(adversarialize(realize_binary(presets::rare_windfall_n5())),
                  std::invalid_argument);
}

TEST_CASE("adversarialize is classification-idempotent on random fixtures") {
  std::mt19937 rng(1234);
  for (int rep = 0; rep < 12; ++rep) {
    int n = rep % 2 ? 3 : 5;
    BinaryChoiceSpec spec =
        zsv::testing::random_perfect_spec(rng, n, SignalTech::DistributionalNews);
    ExplicitProblem pr = realize_binary(spec);
    AdversarializeResult res = adversarialize(pr);
    CHECK(res.report.adverse);
    CHECK(validate_spec(res.repayoffed).ok());
    CHECK(sgn(res.repayoffed.states.front().payoff_diff.front()) != 0);
    // applying the same payoffs again changes nothing about the verdict
    AdversarializeResult again = adversarialize(res.repayoffed);
    CHECK(again.report.adverse);
  }
}

TEST_CASE("elite-adverse conditions on the pinned fixture") {
  EliteSpec spec = presets::elite_n7();
  EliteAdverseReport rep = elite_adverse(spec);
  CHECK(rep.holds);
  CHECK(rep.minority);
  CHECK(rep.nonelite_value == Rational(-5, 14));
  CHECK(sgn(rep.elite_value) > 0);

  // conditional payoff strictly decreasing in the elite count
  Rational v0 = elite_nonelite_conditional(spec.base, 0);
  Rational v1 = elite_nonelite_conditional(spec.base, 1);
  Rational v2 = elite_nonelite_conditional(spec.base, 2);
  CHECK(v0 == Rational(1, 6));
  CHECK(v1 == Rational(-5, 14));
  CHECK(v2 == Rational(-3, 4));
  CHECK(v0 > v1);
  CHECK(v1 > v2);
}

TEST_CASE("e = 0 reduces the non-elite condition to V^G(tau)") {
  BinaryChoiceSpec base = presets::rare_windfall_n5();
  CHECK(elite_nonelite_conditional(base, 0) == vg(base, base.tau()));
  BinaryChoiceSpec frac = presets::fixed_fraction_n7();
  CHECK(elite_nonelite_conditional(frac, 0) == vg(frac, frac.tau()));
}

TEST_CASE("elite conditions match the literal enumeration on a small fixture") {
  // n = 5, two winners or five winners, one elite
  EliteSpec spec;
  spec.base.n = 5;
  spec.base.winner_dist.assign(6, Rational(0));
  spec.base.winner_dist[2] = Rational(7, 8);
  spec.base.winner_dist[5] = Rational(1, 8);
  spec.base.payoffs = {Rational(3), Rational(2)};
  spec.base.signal_tech = SignalTech::PerfectNews;
  spec.base.lambda = Rational(1, 4);
  spec.elite_count = 1;
  REQUIRE(validate_spec(spec).ok());

  ExplicitProblem pr = realize_elite(spec);
  const int tau = 2, e = 1, n = 5;
  // literal V for a non-elite voter: S_i = s0, B = 0, G = G_NE = tau - e
  auto literal = [&](int voter, int want_goods, bool elites_must_be_silent) -> Rational {
    Rational num(0), den(0);
    for (const auto& st : pr.states) {
      if (st.signals[voter] != 0) continue;
      int good_elite = 0, good_nonelite = 0, bad = 0;
      for (int j = 0; j < n; ++j) {
        if (j == voter || st.signals[j] == 0) continue;
        if (pr.is_bad(st.signals[j])) ++bad;
        else (j < e ? good_elite : good_nonelite)++;
      }
      if (bad != 0 || good_nonelite != want_goods) continue;
      if (elites_must_be_silent && good_elite != 0) continue;
      den += st.prob;
      num += st.prob * st.payoff_diff[voter];
    }
    return num / den;
  };
  EliteAdverseReport rep = elite_adverse(spec);
  CHECK(rep.nonelite_value == literal(e, tau - e, true));
  CHECK(rep.elite_value == literal(0, tau - e + 1, true));
}
