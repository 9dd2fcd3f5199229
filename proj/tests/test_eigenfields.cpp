#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "collatz/eigenfields.hpp"
#include "collatz/errors.hpp"
#include "collatz/transfer.hpp"

using namespace collatz;

namespace {
const Weight kBergman = Weight::classic_bergman();
}

TEST_CASE("materialized fields by hand") {
  Materialized m1 = materialize({1, RationalComplex(1), 40}, kBergman);
  RationalVec expect;
  expect.add_term(10, RationalComplex(1));
  expect.add_term(3, RationalComplex(-1));
  expect.add_term(20, RationalComplex(1));
  expect.add_term(6, RationalComplex(-1));
  expect.add_term(40, RationalComplex(1));
  expect.add_term(12, RationalComplex(-1));
  CHECK(m1.vec == expect);
  CHECK(m1.levels == 3);
  CHECK(m1.tail_norm_sq_bound > 0);

  // mu = 0 keeps only the base level
  Materialized mz = materialize({1, RationalComplex(0), 16}, kBergman);
  RationalVec base;
  base.add_term(10, RationalComplex(1));
  base.add_term(3, RationalComplex(-1));
  CHECK(mz.vec == base);

  Materialized m0 = materialize({0, RationalComplex(Rational(1, 2)), 64}, kBergman);
  RationalVec h0;
  for (unsigned n = 0; n <= 4; ++n)
    h0.add_term(pow2(n + 2), RationalComplex(rational_pow(Rational(1, 2), n)));
  CHECK(m0.vec == h0);
  CHECK(m0.levels == 5);
}

TEST_CASE("tail bound decreases with the cap") {
  double prev = -1;
  for (long cap : {64L, 128L, 1024L, 65536L}) {
    Materialized m = materialize({1, RationalComplex(Rational(1, 2)), cap}, kBergman);
    if (prev >= 0) CHECK(m.tail_norm_sq_bound < prev);
    prev = m.tail_norm_sq_bound;
    // the bound really covers the next level's mass
    double next_sq =
        std::pow(0.25, m.levels) *
        (kBergman.inv_value(10 * pow2(m.levels)) + kBergman.inv_value(3 * pow2(m.levels)));
    CHECK(m.tail_norm_sq_bound >= next_sq);
  }
}

TEST_CASE("membership thresholds") {
  CHECK(membership(0, RationalComplex(Rational(7, 5)), kBergman));          // 1.96 < 2
  CHECK(membership(3, RationalComplex(Rational(7, 5)), kBergman));
  CHECK_FALSE(membership(0, RationalComplex(Rational(1), Rational(1)), kBergman));  // = 2
  CHECK_FALSE(membership(5, RationalComplex(Rational(3, 2)), kBergman));    // 2.25 > 2
  CHECK(membership_abs_sq(Rational(49, 25), kBergman));
  CHECK_FALSE(membership_abs_sq(Rational(2), kBergman));

  Weight c1 = Weight::constant(1);
  CHECK(membership(2, RationalComplex(Rational(99, 100)), c1));
  CHECK_FALSE(membership(2, RationalComplex(1), c1));

  Weight p2 = Weight::power_law(1, 2);  // dyadic growth 4
  CHECK(membership_abs_sq(Rational(399, 100), p2));
  CHECK_FALSE(membership_abs_sq(Rational(4), p2));

  CHECK_THROWS_AS(materialize({0, RationalComplex(Rational(3, 2)), 4096}, kBergman),
                  PredicateError);
}

TEST_CASE("safe windows") {
  // cap 40 keeps levels 0..2 of the m=1 field; one transfer step is then
  // settled up to the lowest degree of the last kept level, minus one
  CHECK(truncation_safe_window(1, 40, 1) == 11);
  CHECK(truncation_safe_window(2, 16384, 1) == 5119);
  CHECK(truncation_safe_window(0, 64, 1) == 63);
}

TEST_CASE("eigen relation is exact on the window") {
  std::vector<RationalComplex> grid = {
      RationalComplex(Rational(1, 2)),
      RationalComplex(Rational(-2, 3)),
      RationalComplex(Rational(3, 5), Rational(4, 5)),
      RationalComplex(Rational(0), Rational(1)),
      RationalComplex(1),
      RationalComplex(0),
  };
  for (unsigned m : {0u, 1u, 2u, 7u}) {
    for (const RationalComplex& mu : grid) {
      EigenResidualReport rep = verify_eigenrelation({m, mu, 16384});
      CHECK(rep.residual_zero);
      CHECK(rep.residual_max_abs_sq == 0);
      if (!mu.is_zero()) CHECK(rep.checked_degrees > 0);
    }
  }
}

TEST_CASE("fixed point of the transfer operator") {
  EigenResidualReport rep = verify_eigenrelation({0, RationalComplex(1), 1024});
  CHECK(rep.residual_zero);
  RationalVec h = materialize_raw({0, RationalComplex(1), 1024});
  RationalVec th = apply_T(h);
  for (const auto& [d, c] : th.entries())
    if (d <= rep.window_max) CHECK(c == h.coeff(d));
}

TEST_CASE("periodic points") {
  PeriodicPoint p = periodic_point(0, Rational(1, 2), 16384);
  CHECK(p.period == 4);
  CHECK(p.exact);
  CHECK(p.vec_exact.coeff(4) == RationalComplex(1));
  CHECK(p.vec_exact.coeff(8) == RationalComplex(Rational(0), Rational(1)));
  CHECK(p.vec_exact.coeff(16) == RationalComplex(Rational(-1)));
  CHECK(p.vec_exact.coeff(32) == RationalComplex(Rational(0), Rational(-1)));
  CHECK(p.vec_exact.coeff(64) == RationalComplex(1));

  // return after exactly the period, not before
  Integer window = truncation_safe_window(0, 16384, 4);
  RationalVec v4 = apply_T_power(p.vec_exact, 4);
  for (const auto& [d, c] : p.vec_exact.entries())
    if (d <= window) CHECK(v4.coeff(d) == c);
  for (unsigned t = 1; t < 4; ++t) {
    RationalVec vt = apply_T_power(p.vec_exact, t);
    bool differs = false;
    for (const auto& [d, c] : p.vec_exact.entries())
      if (d <= window && vt.coeff(d) != c) differs = true;
    CHECK(differs);
  }

  CHECK(periodic_point(1, Rational(0), 64).period == 1);
  CHECK(periodic_point(0, Rational(1, 3), 64).period == 6);
  CHECK(periodic_point(0, Rational(2, 3), 64).period == 3);
  CHECK(periodic_point(2, Rational(3, 4), 64).period == 8);
  CHECK(periodic_point(0, Rational(1), 64).period == 2);

  PeriodicPoint f = periodic_point(1, Rational(1, 3), 4096);
  CHECK_FALSE(f.exact);
  CHECK(f.mu.real() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(f.mu.imag() == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-12));
  CHECK_FALSE(f.vec_float.empty());
}

TEST_CASE("hypercyclicity witness grids") {
  WitnessReport rep = godefroy_shapiro_witnesses(kBergman, 2, 2, 4096);
  CHECK(rep.inner_grid.size() == 24);  // 3 m-values x 2 radii x 4 directions
  CHECK(rep.outer_grid.size() == 24);
  for (const EigenSpec& s : rep.inner_grid) {
    CHECK(s.mu.abs_sq() < 1);
    CHECK(membership(s.m, s.mu, kBergman));
  }
  for (const EigenSpec& s : rep.outer_grid) {
    CHECK(s.mu.abs_sq() > 1);
    CHECK(s.mu.abs_sq() < 2);
    CHECK(membership(s.m, s.mu, kBergman));
  }

  CHECK_THROWS_AS(godefroy_shapiro_witnesses(Weight::constant(1), 2),
                  PredicateError);
  CHECK_THROWS_AS(godefroy_shapiro_witnesses(kBergman, 3), PredicateError);
  CHECK_THROWS_AS(godefroy_shapiro_witnesses(kBergman, 1), PredicateError);

  // power-law growth 4 admits rho = 4 and radii up to 1.9-ish
  WitnessReport p4 = godefroy_shapiro_witnesses(Weight::power_law(1, 2), 4, 1, 4096);
  for (const EigenSpec& s : p4.outer_grid) CHECK(s.mu.abs_sq() < 4);
}

TEST_CASE("span residuals") {
  SpanResidualReport empty = span_residual(3, {}, kBergman);
  CHECK(empty.residual_sq == doctest::Approx(empty.target_norm_sq));
  CHECK(empty.target_norm_sq == doctest::Approx(std::numbers::pi / 4).epsilon(1e-14));

  // single field oracle: distance^2 = ||t||^2 - |<t,v>|^2 / ||v||^2
  EigenSpec lone{1, RationalComplex(Rational(1, 3)), 1 << 20};
  SpanResidualReport single = span_residual(3, {lone}, kBergman);
  Materialized mv = materialize(lone, kBergman);
  FloatVec v = to_float(mv.vec);
  FloatVec t = to_float(RationalVec::monomial(3));
  double tn = norm_sq(t, kBergman);
  double expect = tn - std::norm(inner(t, v, kBergman)) / norm_sq(v, kBergman);
  CHECK(single.residual_sq == doctest::Approx(expect).epsilon(1e-6));
  CHECK(single.residual_sq < tn);

  // growing the family never increases the distance
  std::vector<EigenSpec> family;
  double prev = empty.residual_sq;
  for (unsigned m = 1; m <= 4; ++m) {
    family.push_back({m, RationalComplex(Rational(1, 3)), 1 << 16});
    SpanResidualReport r = span_residual(3, family, kBergman);
    CHECK(r.residual_sq <= prev + 1e-9);
    prev = r.residual_sq;
  }

  // duplicated field: singular Gram, flagged, same distance as the single one
  SpanResidualReport dup = span_residual(3, {lone, lone}, kBergman);
  CHECK(dup.ill_conditioned);
  CHECK(dup.residual_sq == doctest::Approx(single.residual_sq).epsilon(1e-8));

  CHECK_THROWS_AS(
      span_residual(3, {{0, RationalComplex(Rational(3, 2)), 4096}}, kBergman),
      PredicateError);
}

TEST_CASE("span sees the target through the low ray") {
  // h_1(mu) carries -z^3; a small two-field family should cut the distance
  // to z^3 well below the trivial bound
  std::vector<EigenSpec> family = {
      {1, RationalComplex(Rational(1, 4)), 1 << 16},
      {2, RationalComplex(Rational(1, 4)), 1 << 16},
  };
  SpanResidualReport r = span_residual(3, family, kBergman);
  CHECK(r.residual_sq < 0.5 * r.target_norm_sq);
  CHECK(r.gram_tail_bound < 1e-11);
}
