#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qmz/boundary.hpp"

using namespace qmz;

namespace {
const double kPi = 4.0 * std::atan(1.0);
}

TEST_CASE("sign change scanning and bisection") {
  auto fn = [](double x) { return std::cos(x); };
  auto br = sign_change_scan(fn, 0.0, 5.0, 200, true);
  REQUIRE(br.size() == 2);
  CHECK(std::abs(bisect(fn, br[0].first, br[0].second, 1e-12) - kPi / 2) < 1e-10);
  CHECK(std::abs(bisect(fn, br[1].first, br[1].second, 1e-12) - 3 * kPi / 2) < 1e-10);
  // serial and parallel scans agree
  auto br2 = sign_change_scan(fn, 0.0, 5.0, 200, false);
  CHECK(br == br2);
}

TEST_CASE("arc zeros of the basic forms") {
  auto az4 = arc_zeros(eisenstein(4, 40), 4);
  REQUIRE(az4.size() == 1);
  CHECK(std::abs(az4[0].theta - 2 * kPi / 3) < 1e-12);
  CHECK(az4[0].weight == frac(1, 3));
  CHECK(az4[0].multiplicity == 1);
  auto az6 = arc_zeros(eisenstein(6, 40), 6);
  REQUIRE(az6.size() == 1);
  CHECK(std::abs(az6[0].theta - kPi / 2) < 1e-12);
  CHECK(az6[0].weight == frac(1, 2));
  CHECK(arc_zeros(delta(40), 12).empty());
}

TEST_CASE("arc zeros carry exact corner multiplicities") {
  // weight 14: order 2 at the corner, order 1 at i, nothing else
  auto az = arc_zeros(eisenstein_general(14, 60), 14);
  Rational total = 0;
  bool corner = false, at_i = false;
  for (const auto& z : az) {
    total += z.weight * z.multiplicity;
    if (std::abs(z.theta - 2 * kPi / 3) < 1e-12) {
      corner = true;
      CHECK(z.multiplicity == 2);
    }
    if (std::abs(z.theta - kPi / 2) < 1e-12) {
      at_i = true;
      CHECK(z.multiplicity == 1);
    }
  }
  CHECK(corner);
  CHECK(at_i);
  CHECK(total == frac(14, 12));
  // the full arc doubles interior zeros but keeps corner data
  auto full = arc_zeros_full(eisenstein_general(14, 60), 14);
  CHECK(full.size() >= az.size());
  for (size_t i = 1; i < full.size(); ++i) CHECK(full[i - 1].theta > full[i].theta);
}

TEST_CASE("eisenstein zeros all lie on the arc") {
  for (long k = 4; k <= 16; k += 2) {
    PowerSeries e = eisenstein_general(k, 2 * static_cast<int>(k) + 30);
    Rational total = 0;
    for (const auto& z : arc_zeros(e, k)) total += z.weight * z.multiplicity;
    CHECK(total == frac(k, 12));
    CHECK(line_zeros(e, k).empty());
  }
}

TEST_CASE("line zeros") {
  CHECK(line_zeros(delta(60), 12).empty());
  CHECK(line_zeros(eisenstein(4, 40), 4).empty());
  // the gap form's bottom component has a zero on the vertical line
  QuasiModularForm g = gap_form(36);
  auto lz = line_zeros(g.components[0], 36);
  CHECK(!lz.empty());
  for (size_t i = 1; i < lz.size(); ++i) CHECK(lz[i - 1] < lz[i]);
  for (double y : lz) CHECK(y > std::sqrt(3.0) / 2);
}

TEST_CASE("cusp orders") {
  CHECK(cusp_order(qm_modular(delta(40), 12), Lambda::inf()) == 1);
  CHECK(cusp_order(qm_modular(eisenstein(4, 40), 4), Lambda::inf()) == 0);
  CHECK(cusp_order(qm_e2(40), Lambda::finite(0)) == 0);
  CHECK(cusp_order(qm_e2(40), Lambda::inf()) == 0);
}

TEST_CASE("boundary spectrum of E2") {
  BoundarySpectrum sp = spectrum(qm_e2(40));
  CHECK(sp.arc.empty());
  CHECK(sp.line.empty());
  CHECK(sp.r == 1);
  CHECK(sp.v_rho == 0);
  CHECK(sp.s == 1);
  CHECK(sp.sign_at_rho == 1);
}

TEST_CASE("boundary spectrum of the gap form") {
  BoundarySpectrum sp = spectrum(gap_form(36));
  // two interior arc zeros of the top component plus both forced corners
  CHECK(sp.arc.size() == 4);
  CHECK(sp.signs_arc.size() == 4);
  CHECK(sp.line.empty());
  CHECK((sp.r == 1 || sp.r == -1));
  nlohmann::json j = sp.to_json();
  CHECK(j.contains("arc_angles"));
  CHECK(j.contains("line_zeros"));
}

TEST_CASE("weighted distinct boundary zeros of eisenstein series") {
  for (long k = 4; k <= 16; k += 2) {
    CGLCounts c = cgl(eisenstein_general(k, 2 * static_cast<int>(k) + 30), k);
    Rational expect = frac(k, 12) - (k % 6 == 2 ? frac(1, 3) : Rational(0));
    CHECK(c.C == expect);
    CHECK(c.L == 0);
    CHECK(c.rho_flag == (k % 6 == 2 || k % 6 == 4));
  }
  CGLCounts cd = cgl(delta(60), 12);
  CHECK(cd.C == 0);
  CHECK(cd.L == 1);
  CHECK(!cd.rho_flag);
}
