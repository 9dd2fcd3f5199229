#include <doctest.h>

#include <numbers>
#include <random>

#include "collatz/coeff_vec.hpp"

using namespace collatz;

namespace {

RationalVec random_vec(std::mt19937& rng, int terms) {
  std::uniform_int_distribution<int> deg(3, 200);
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 5);
  RationalVec v;
  for (int i = 0; i < terms; ++i)
    v.add_term(deg(rng), RationalComplex(Rational(num(rng), den(rng)),
                                         Rational(num(rng), den(rng))));
  return v;
}

}  // namespace

TEST_CASE("vector arithmetic and pruning") {
  RationalVec z3 = RationalVec::monomial(3);
  RationalVec sum = z3 + RationalVec::monomial(3, RationalComplex(-1));
  CHECK(sum.empty());

  RationalVec v = RationalVec::monomial(3) + RationalVec::monomial(4);
  RationalVec doubled = v.scaled(RationalComplex(2));
  CHECK(doubled.coeff(3) == RationalComplex(2));
  CHECK(doubled.coeff(4) == RationalComplex(2));
  CHECK(v - RationalVec::monomial(4) == z3);

  CHECK_THROWS_AS(RationalVec::monomial(2), std::invalid_argument);
  CHECK(v.max_degree() == 4);
  CHECK(v.support_size() == 2);
}

TEST_CASE("norms under the bergman weight") {
  Weight w = Weight::classic_bergman();
  ExactReal n3 = norm_sq(RationalVec::monomial(3), w);
  CHECK(n3.value == Rational(1, 4));
  CHECK(n3.pi_power == 1);
  CHECK(n3.to_double() == doctest::Approx(std::numbers::pi / 4).epsilon(1e-14));

  ExactReal n34 = norm_sq(RationalVec::monomial(3) + RationalVec::monomial(4), w);
  CHECK(n34.value == Rational(1, 4) + Rational(1, 5));

  CHECK(norm_sq(RationalVec{}, w).value == 0);
}

TEST_CASE("inner products") {
  Weight w = Weight::classic_bergman();
  CHECK(inner(RationalVec::monomial(3), RationalVec::monomial(4), w).value.is_zero());

  ExactCplx p55 = inner(RationalVec::monomial(5), RationalVec::monomial(5), w);
  CHECK(p55.value == RationalComplex(Rational(1, 6)));
  CHECK(p55.pi_power == 1);

  RationalVec f = RationalVec::monomial(3) + RationalVec::monomial(5, RationalComplex(2));
  CHECK(inner(f, RationalVec::monomial(5), w).value == RationalComplex(Rational(2, 6)));

  // conjugate-linear in the second slot
  RationalVec gi = RationalVec::monomial(5, RationalComplex(Rational(0), Rational(1)));
  CHECK(inner(RationalVec::monomial(5), gi, w).value ==
        RationalComplex(Rational(0), Rational(-1, 6)));
}

TEST_CASE("norm is the inner product diagonal") {
  std::mt19937 rng(11);
  Weight w = Weight::classic_bergman();
  for (int t = 0; t < 100; ++t) {
    RationalVec f = random_vec(rng, 8);
    ExactCplx self = inner(f, f, w);
    ExactReal n = norm_sq(f, w);
    CHECK(self.value.im == 0);
    CHECK(self.value.re == n.value);
    CHECK(self.pi_power == n.pi_power);
  }
}

TEST_CASE("cauchy-schwarz holds exactly") {
  std::mt19937 rng(7);
  for (const Weight& w : {Weight::classic_bergman(), Weight::constant(2),
                          Weight::power_law(1, 2)}) {
    for (int t = 0; t < 200; ++t) {
      RationalVec f = random_vec(rng, 6);
      RationalVec g = random_vec(rng, 6);
      Rational lhs = inner(f, g, w).value.abs_sq();
      Rational rhs = norm_sq(f, w).value * norm_sq(g, w).value;
      CHECK(lhs <= rhs);
    }
  }
}

TEST_CASE("float conversion is consistent") {
  std::mt19937 rng(3);
  Weight w = Weight::classic_bergman();
  for (int t = 0; t < 50; ++t) {
    RationalVec f = random_vec(rng, 10);
    double exact = norm_sq(f, w).to_double();
    double approx = norm_sq(to_float(f), w);
    CHECK(approx == doctest::Approx(exact).epsilon(1e-12));
  }
}

TEST_CASE("inexact families are refused for rational norms") {
  Weight ph = Weight::power_law(1, Rational(1, 2));
  CHECK_THROWS(norm_sq(RationalVec::monomial(3), ph));
  CHECK(norm_sq(to_float(RationalVec::monomial(3)), ph) ==
        doctest::Approx(1.0 / std::sqrt(4.0)));
}
