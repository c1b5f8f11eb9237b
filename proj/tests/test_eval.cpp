#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qmz/eval.hpp"

using namespace qmz;

namespace {
const double kPi = 4.0 * std::atan(1.0);
}

TEST_CASE("nome map") {
  CHECK(std::abs(q_of(Cx(0, 1)) - std::exp(-2 * kPi)) < 1e-15);
  CHECK(std::abs(q_of(Cx(0.5, 1)) + std::exp(-2 * kPi)) < 1e-15);
}

TEST_CASE("compiled series matches exact evaluation") {
  PowerSeries s = PowerSeries::exact({1, frac(-1, 2), 3});
  CompiledSeries c = compile_series(s);
  Cx q(0.1, 0.05);
  Cx want = 1.0 + Cx(-0.5) * q + 3.0 * q * q;
  CHECK(std::abs(c.eval(q) - want) < 1e-15);
  CHECK(std::abs(c.eval_upto(q, 1) - (1.0 + Cx(-0.5) * q)) < 1e-15);
}

TEST_CASE("special value at the elliptic point i") {
  CHECK(std::abs(eval_qm(qm_e2(60), Cx(0, 1)) - Cx(3 / kPi, 0)) < 1e-12);
}

TEST_CASE("two-order agreement guards precision") {
  // far too short a series at low height cannot certify the tolerance
  QuasiModularForm short_e2 = qm_e2(3);
  EvalConfig tight;
  tight.tolerance = 1e-14;
  CHECK_THROWS_AS(eval_qm(short_e2, Cx(0.1, 0.35), tight), PrecisionError);
}

TEST_CASE("arc normalization is real for modular forms") {
  QuasiModularForm e4 = qm_modular(eisenstein(4, 60), 4);
  QuasiModularForm e2 = qm_e2(60);
  for (double th = kPi / 3; th <= 2 * kPi / 3 + 1e-9; th += kPi / 30) {
    CHECK(std::abs(hat_eval(e4, th).imag()) < 1e-9);
    CHECK(std::abs(hat_eval(e2, th).imag() - 3 / kPi) < 1e-9);
  }
}

TEST_CASE("imaginary part via the derivation expansion") {
  QuasiModularForm e2 = qm_e2(60);
  QuasiModularForm e2sq = qm_mul(e2, e2);
  for (double th = kPi / 3 + 0.01; th < 2 * kPi / 3; th += 0.1) {
    CHECK(std::abs(im_hat(e2sq, th) - hat_eval(e2sq, th).imag()) < 1e-9);
    CHECK(std::abs(im_hat(e2, th) - 3 / kPi) < 1e-9);
    // depth 1: the imaginary part is (3/pi) times the arc value of f1
    QuasiModularForm f = qm_mul(e2, qm_modular(eisenstein(6, 60), 6));
    double f1hat = hat_eval(qm_modular(f.components[1], 6), th).real();
    CHECK(std::abs(im_hat(f, th) - 3 / kPi * f1hat) < 1e-9);
  }
}

TEST_CASE("inversion law of the derivation expansion") {
  QuasiModularForm f = qm_mul(qm_e2(60), qm_modular(eisenstein(6, 60), 6));
  for (double x = -0.4; x <= 0.45; x += 0.2)
    for (double y = 0.8; y <= 1.6; y += 0.4) {
      Cx tau(x, y);
      Cx lhs = std::pow(-tau, -8.0) * eval_qm(f, -1.0 / tau);
      Cx rhs = 0, u = 1.0 / (Cx(0, 2 * kPi) * tau), up = 1.0;
      double fact = 1;
      for (int j = 0; j <= f.depth(); ++j) {
        if (j) {
          fact *= j;
          up *= u;
        }
        rhs += eval_qm(frak_d(f, j), tau) / fact * up;
      }
      CHECK(std::abs(lhs - rhs) < 1e-8 * std::max(1.0, std::abs(lhs)));
    }
}

TEST_CASE("limiting signs at the corner") {
  CHECK(rho_sign(delta(60), 12).r == -1);
  CHECK(rho_sign(eisenstein(4, 60), 4).r == 1);
  CHECK(rho_sign(eisenstein(4, 60), 4).v_rho == 1);
  CHECK(rho_sign(eisenstein(6, 60), 6).r == 1);
  CHECK(rho_sign(eisenstein(6, 60), 6).v_rho == 0);
}

TEST_CASE("leading sign invariant") {
  CHECK(s_value(qm_e2(40)) == 1);
  CHECK(s_value(gap_form(36)) == 1);
  QuasiModularForm neg = qm_scale(qm_e2(40), -1);
  CHECK(s_value(neg) == -1);
}
