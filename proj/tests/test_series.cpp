#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include "qmz/series.hpp"

using namespace qmz;

namespace {
PowerSeries sample_a() {
  return PowerSeries::exact({1, frac(1, 2), -3, 0, frac(7, 5)});
}
PowerSeries sample_b() { return PowerSeries::exact({2, -1, 0, frac(5, 3), 4}); }
}  // namespace

TEST_CASE("construction and access") {
  PowerSeries a = sample_a();
  CHECK(a.order() == 4);
  CHECK(a.at(0) == 1);
  CHECK(a.at(1) == frac(1, 2));
  CHECK(a.at(4) == frac(7, 5));
  CHECK(a.at_c(2) == Cx(-3.0, 0.0));
  CHECK_THROWS(a.at(5));
  CHECK(PowerSeries::zero(3).is_zero());
  CHECK(PowerSeries::zero(3).first_nonzero() == -1);
  CHECK(PowerSeries::monomial(5, 2, 6).first_nonzero() == 2);
  CHECK(PowerSeries::constant(3, 4).at(0) == 3);
}

TEST_CASE("ring axioms on samples") {
  PowerSeries a = sample_a(), b = sample_b(), c = PowerSeries::exact({0, 1, 1});
  CHECK((a + b).same_prefix(b + a));
  CHECK((a * b).same_prefix(b * a));
  CHECK(((a + b) * c).same_prefix(a * c + b * c));
  CHECK((a - a).is_zero());
  CHECK((-a + a).is_zero());
}

TEST_CASE("truncation follows the minimum order") {
  PowerSeries a = sample_a();                        // order 4
  PowerSeries c = PowerSeries::exact({1, 2, 3});     // order 2
  CHECK((a + c).order() == 2);
  CHECK((a * c).order() == 2);
  CHECK(a.truncate(1).order() == 1);
}

TEST_CASE("inverse and powers") {
  PowerSeries a = sample_a();
  PowerSeries prod = a * a.invert();
  CHECK(prod.at(0) == 1);
  for (int i = 1; i <= prod.order(); ++i) CHECK(prod.at(i) == 0);
  CHECK(a.pow(3).same_prefix(a * a * a));
  CHECK(a.pow(0).at(0) == 1);
  CHECK_THROWS_AS(PowerSeries::exact({0, 1}).invert(), NonUnitError);
}

TEST_CASE("shifts") {
  PowerSeries a = PowerSeries::exact({0, 0, 3, 4});
  CHECK(a.shift_down(2).at(0) == 3);
  CHECK(a.shift_down(2).shift_up(2).same_prefix(a));
  CHECK_THROWS(PowerSeries::exact({1, 2}).shift_down(1));
}

TEST_CASE("derivative is a derivation") {
  PowerSeries a = sample_a(), b = sample_b();
  PowerSeries lhs = (a * b).derivative_q();
  PowerSeries rhs = a.derivative_q() * b + a * b.derivative_q();
  CHECK(lhs.same_prefix(rhs));
  CHECK(PowerSeries::monomial(1, 3, 5).derivative_q().at(3) == 3);
}

TEST_CASE("mode separation") {
  PowerSeries f = PowerSeries::floating({Cx(1, 0), Cx(0, 1)});
  CHECK(f.mode() == Mode::floating);
  CHECK_THROWS_AS(sample_a() + f, ModeMismatchError);
  CHECK_THROWS(f.at(0));
  CHECK(f.at_c(1) == Cx(0, 1));
}

TEST_CASE("json round trip") {
  PowerSeries a = sample_a();
  nlohmann::json j = a.to_json();
  CHECK(j["order"] == 4);
  CHECK(j["coeffs"][1] == "1/2");
  PowerSeries back = PowerSeries::from_json(j);
  CHECK(back.order() == a.order());
  CHECK(back.same_prefix(a));
}

TEST_CASE("free function aliases") {
  PowerSeries a = sample_a(), b = sample_b();
  CHECK(series_add(a, b).same_prefix(a + b));
  CHECK(series_mul(a, b).same_prefix(a * b));
  CHECK(series_invert(a).same_prefix(a.invert()));
  CHECK(d_operator(a).same_prefix(a.derivative_q()));
}
