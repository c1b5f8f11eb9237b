#pragma once
#include <functional>
#include <string>

#include "qmz/boundary.hpp"

namespace qmz {

struct ContourConfig {
  double indent_radius = 1e-3;
  double top_height = 12.0;
  double max_phase_step = 1.4707963;  // pi/2 - 0.1
  int refinement_limit = 3;
  // values along the path are relative to a positive envelope of the terms
  // entering the evaluation, so this floor marks where the phase becomes
  // noise-dominated rather than an absolute magnitude
  double min_abs = 1e-15;
  double residual_tol = 0.05;
  bool parallel = true;
  int line_samples = 4000;
  int arc_samples = 2000;
  int top_samples = 200;
  double gamma02_t0 = 0.32;
};

using CFn = std::function<Cx(Cx)>;

struct Breakdown {
  long interior = 0;   // winding of the indented contour
  Rational boundary;   // explicit weights of boundary zeros (1, 1/2, 1/3)
  int cusp = 0;        // order at the cusp
};

struct ZeroCountReport {
  std::string lambda;
  Rational n;
  Breakdown breakdown;
  std::string method;
  nlohmann::json to_json() const;
};

// F_lambda(tau) = sum_j (d^j f)(tau)/j! (2 pi i (tau - lambda))^{-j}; its zeros
// in the fundamental domain are the zeros of f in the corresponding translate
Cx target_function(const QuasiModularForm& f, const Lambda& lambda, Cx tau);

// argument variation / 2pi along a closed polyline, adaptively refined
long winding_number(const std::vector<Cx>& path, const CFn& fn, double max_phase_step,
                    double residual_tol, double min_abs);

// winding of fn around a circle (multiplicity probe)
long circle_winding(const CFn& fn, Cx center, double radius, double max_phase_step);

// weight of a zero position under the fundamental-domain boundary convention
Rational domain_weight(Cx z, double tol = 1e-6);

ZeroCountReport count_zeros(const QuasiModularForm& f, const Lambda& lambda,
                            const ContourConfig& cfg = {});

// extension to real lambda (used for threshold hunting)
Rational count_zeros_real(const QuasiModularForm& f, double lambda,
                          const ContourConfig& cfg = {});

// count for a bare q-expansion (lambda = infinity); covers mixed-weight sums
Rational count_zeros_series(const PowerSeries& s, const ContourConfig& cfg = {});

struct Gamma2 {
  long a = 1, b = 0, c = 0, d = 1;  // in Gamma_0(2): c even, det = 1
};

// weighted zero count of f over the gamma-translate of the level-2 domain
Rational count_zeros_gamma02(const QuasiModularForm& f, const Gamma2& g,
                             const ContourConfig& cfg = {});

}  // namespace qmz
