#include <doctest.h>

#include <cmath>

#include "zsv/poly.hpp"
#include "zsv/rational.hpp"

using namespace zsv;

TEST_CASE("rational parsing and formatting") {
  CHECK(*parse_rational("1/4") == Rational(1, 4));
  CHECK(*parse_rational("-3/9") == Rational(-1, 3));
  CHECK(*parse_rational("7") == Rational(7));
  CHECK(*parse_rational("0.25") == Rational(1, 4));
  CHECK(*parse_rational("0.6") == Rational(3, 5));
  CHECK(!parse_rational("axe"));
  CHECK(!parse_rational(""));
  CHECK(to_string(Rational(-2, 6)) == "-1/3");
  CHECK(to_string(Rational(4, 2)) == "2");
}

TEST_CASE("binomials and powers") {
  CHECK(binom(6, 2) == Rational(15));
  CHECK(binom(6, 7) == Rational(0));
  CHECK(binom(6, -1) == Rational(0));
  CHECK(multinomial(6, {2, 2, 2}) == Rational(90));
  CHECK(rat_pow(Rational(3, 4), 3) == Rational(27, 64));
  CHECK(rat_pow(Rational(5), 0) == Rational(1));
}

TEST_CASE("simplest rational in an interval") {
  CHECK(simplest_between(Rational(1, 10), Rational(9, 10)) == Rational(1, 2));
  CHECK(simplest_between(Rational(-1, 2), Rational(1, 2)) == Rational(0));
  // a tight bracket around 1/3 recovers 1/3
  Rational lo = Rational(1, 3) - Rational(1, 1000000000);
  Rational hi = Rational(1, 3) + Rational(1, 1000000000);
  CHECK(simplest_between(lo, hi) == Rational(1, 3));
  CHECK(simplest_between(Rational(5, 2), Rational(7, 2)) == Rational(3));
  CHECK(simplest_between(Rational(-7, 2), Rational(-5, 2)) == Rational(-3));
}

TEST_CASE("polynomial arithmetic and evaluation") {
  Poly p({Rational(-1), Rational(0), Rational(1)});  // x^2 - 1
  CHECK(p.degree() == 2);
  CHECK(p.eval(Rational(3)) == Rational(8));
  CHECK(p.derivative().eval(Rational(3)) == Rational(6));
  Poly q({Rational(1), Rational(1)});  // x + 1
  auto [quo, rem] = Poly::divmod(p, q);
  CHECK(rem.is_zero());
  CHECK(quo.eval(Rational(5)) == Rational(4));  // x - 1
}

TEST_CASE("root isolation finds all real roots") {
  // (x - 1/3)(x - 1/2)(x - 2) expanded
  Poly p = Poly({Rational(-1, 3), Rational(1)}) * Poly({Rational(-1, 2), Rational(1)}) *
           Poly({Rational(-2), Rational(1)});
  auto roots = isolate_real_roots(p, Rational(0), Rational(10));
  REQUIRE(roots.size() == 3);
  CHECK(*find_exact_root(p, roots[0]) == Rational(1, 3));
  CHECK(*find_exact_root(p, roots[1]) == Rational(1, 2));
  CHECK(*find_exact_root(p, roots[2]) == Rational(2));
}

TEST_CASE("root isolation with multiplicities and irrational roots") {
  // (x^2 - 2)(x - 1)^2: distinct roots sqrt(2) and 1 (double)
  Poly p = Poly({Rational(-2), Rational(0), Rational(1)}) *
           Poly({Rational(-1), Rational(1)}) * Poly({Rational(-1), Rational(1)});
  auto roots = isolate_real_roots(p, Rational(0), Rational(3));
  REQUIRE(roots.size() == 2);
  // the double root at 1 is found exactly, the irrational one is not
  bool saw_exact_one = false, saw_sqrt2 = false;
  for (const auto& iv : roots) {
    auto ex = find_exact_root(p, iv);
    if (ex && *ex == Rational(1)) saw_exact_one = true;
    if (!ex) {
      RootInterval narrow = refine_root(p, iv, Rational(1, 1000000));
      double mid = to_double((narrow.lo + narrow.hi) / 2);
      if (std::abs(mid - 1.4142135) < 1e-5) saw_sqrt2 = true;
    }
  }
  CHECK(saw_exact_one);
  CHECK(saw_sqrt2);
}

TEST_CASE("square-free part strips multiplicity") {
  Poly p = Poly({Rational(-1), Rational(1)}) * Poly({Rational(-1), Rational(1)}) *
           Poly({Rational(2), Rational(1)});
  Poly sf = square_free_part(p);
  CHECK(sf.degree() == 2);
  CHECK(sgn(sf.eval(Rational(1))) == 0);
  CHECK(sgn(sf.eval(Rational(-2))) == 0);
}
