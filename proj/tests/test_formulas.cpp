#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qmz/counting.hpp"
#include "qmz/formulas.hpp"

using namespace qmz;

TEST_CASE("interval classification") {
  CHECK(classify_lambda(Lambda::inf()).kind == LambdaClass::outer);
  CHECK(classify_lambda(Lambda::finite(3)).kind == LambdaClass::outer);
  CHECK(classify_lambda(Lambda::finite(-3)).kind == LambdaClass::outer);
  CHECK(classify_lambda(Lambda::finite(frac(3, 4))).kind == LambdaClass::mid);
  CHECK(classify_lambda(Lambda::finite(frac(-3, 4))).kind == LambdaClass::mid);
  CHECK(classify_lambda(Lambda::finite(frac(1, 5))).kind == LambdaClass::inner);
  CHECK(classify_lambda(Lambda::finite(0)).kind == LambdaClass::inner);
  CHECK_THROWS_AS(classify_lambda(Lambda::finite(1)), BoundaryLambdaError);
  CHECK_THROWS_AS(classify_lambda(Lambda::finite(frac(-1, 2))), BoundaryLambdaError);
}

TEST_CASE("closed counts for critical points") {
  PowerSeries d = delta(60);
  CHECK(n_crit(d, 12, {LambdaClass::outer}) == 1);
  CHECK(n_crit(d, 12, {LambdaClass::mid}) == 1);
  CHECK(n_crit(d, 12, {LambdaClass::inner}) == 2);
  PowerSeries e4 = eisenstein(4, 60);
  CHECK(n_crit(e4, 4, {LambdaClass::outer}) == 1);
  CHECK(n_crit(e4, 4, {LambdaClass::mid}) == 0);
  CHECK(n_crit(e4, 4, {LambdaClass::inner}) == 0);
  PowerSeries e14 = eisenstein_general(14, 80);
  CHECK(n_crit(e14, 14, {LambdaClass::outer}) == frac(7, 3));
  CHECK(n_crit(e14, 14, {LambdaClass::mid}) == frac(1, 3));
  CHECK(n_crit(e14, 14, {LambdaClass::inner}) == frac(1, 3));
}

TEST_CASE("closed counts for depth-1 forms") {
  QuasiModularForm e2 = qm_e2(60);
  CHECK(n_depth1(e2, {LambdaClass::outer}) == 0);
  CHECK(n_depth1(e2, {LambdaClass::mid}) == 0);
  CHECK(n_depth1(e2, {LambdaClass::inner}) == 1);
  QuasiModularForm g = gap_form(36);
  CHECK(n_depth1(g, {LambdaClass::outer}) == 1);
  CHECK(n_depth1(g, {LambdaClass::mid}) == 5);
  CHECK(n_depth1(g, {LambdaClass::inner}) == 6);
  // outer and mid counts always pair up to floor(k/6)
  CHECK(n_depth1(g, {LambdaClass::outer}) + n_depth1(g, {LambdaClass::mid}) ==
        Rational(floor_long(36, 6)));
  // reducible forms are rejected
  CHECK_THROWS_AS(n_depth1(d_form(qm_modular(delta(60), 12)), {LambdaClass::outer}),
                  PreconditionError);
}

TEST_CASE("independent route to the count at infinity") {
  CHECK(n_infinity_depth1(qm_e2(60)) == 0);
  CHECK(n_infinity_depth1(gap_form(36)) == 1);
  QuasiModularForm de4 = d_form(qm_modular(eisenstein(4, 60), 4));
  CHECK(n_infinity_depth1(de4) == n_depth1(de4, {LambdaClass::outer}));
}

TEST_CASE("mixed two-term counts") {
  int n = 60;
  PowerSeries e4 = eisenstein(4, n), e6 = eisenstein(6, n), d = delta(n);
  PowerSeries one = PowerSeries::constant(1, n);
  // E4 + 1: the lower piece has no arc zeros, so the sum is empty
  CHECK(n_mixed(e4, 4, one, 2) == 0);
  // E6 + E4 and Delta + E4, checked against the contour oracle on the sums
  CHECK(n_mixed(e6, 6, e4, 1) == count_zeros_series(e6 + e4));
  CHECK(n_mixed(d, 12, e4, 4) == count_zeros_series(d + e4));
  CHECK_THROWS_AS(n_mixed(e4, 4, one, 0), DomainError);
}

TEST_CASE("pair sums") {
  QuasiModularForm e2 = qm_e2(60);
  CHECK(pair_sum(e2, PairRegime::mid) == 0);
  CHECK(pair_sum(e2, PairRegime::outer) == 1);
  CHECK(pair_sum(gap_form(36), PairRegime::mid) == 6);
}

TEST_CASE("known tables") {
  CHECK(known_tables(KnownTable::E2, 2, {LambdaClass::outer}) == 0);
  CHECK(known_tables(KnownTable::E2, 2, {LambdaClass::mid}) == 0);
  CHECK(known_tables(KnownTable::E2, 2, {LambdaClass::inner}) == 1);
  CHECK(known_tables(KnownTable::DEk, 12, {LambdaClass::outer}) == 2);
  CHECK(known_tables(KnownTable::DEk, 12, {LambdaClass::inner}) == 0);
  CHECK(known_tables(KnownTable::DEk, 14, {LambdaClass::outer}) == frac(7, 3));
  CHECK(known_tables(KnownTable::DEk, 14, {LambdaClass::inner}) == frac(1, 3));
  CHECK_THROWS_AS(known_tables(KnownTable::DEk, 7, {LambdaClass::outer}), DomainError);
}

TEST_CASE("dimension bound and real-coefficient counts") {
  auto ub = upper_bound(36);
  CHECK(ub.first == 6);
  CHECK(ub.second == 7);
  auto c1 = chebyshev_counts(1);
  CHECK(c1.first == 1);
  CHECK(c1.second == 0);
  auto c2 = chebyshev_counts(2);
  CHECK(c2.first == 0);
  CHECK(c2.second == 1);
  auto c6 = chebyshev_counts(6);
  CHECK(c6.first == 2);
  CHECK(c6.second == 1);
  CHECK_THROWS_AS(chebyshev_counts(0), DomainError);
}
