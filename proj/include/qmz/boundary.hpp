#pragma once
#include <functional>

#include "qmz/eval.hpp"

namespace qmz {

struct ScanConfig {
  int arc_samples = 2000;        // resolution pi/2000 over the arc
  int line_samples = 4000;       // samples on the vertical line
  double bisect_tol = 1e-10;     // refinement target
  double collision_tol = 1e-6;   // closer zeros trigger a 4x rescan
  double dip_tol = 1e-6;         // |value| dip without sign change -> ambiguity
  bool parallel = true;
};

// brackets [a_i, b_i] with a sign change of fn, found by uniform scanning
std::vector<std::pair<double, double>> sign_change_scan(
    const std::function<double(double)>& fn, double a, double b, int samples, bool parallel);

double bisect(const std::function<double(double)>& fn, double a, double b, double tol);

struct ArcZero {
  double theta = 0.0;
  Rational weight;  // 1/e_z: 1 interior, 1/2 at i, 1/3 at rho
  int multiplicity = 1;
};

// zeros of the hat of g on [pi/2, 2*pi/3]; endpoint zeros come from the exact
// vanishing orders, interior zeros from sign changes; descending in theta
std::vector<ArcZero> arc_zeros(const PowerSeries& g, long k, const ScanConfig& scfg = {},
                               const EvalConfig& cfg = {});

// zeros on (pi/3, 2*pi/3] counted with multiplicity (mirror symmetry), descending
std::vector<ArcZero> arc_zeros_full(const PowerSeries& g, long k, const ScanConfig& scfg = {},
                                    const EvalConfig& cfg = {});

// zeros of g on Re z = -1/2 with Im z > sqrt(3)/2, returned as Im parts ascending
std::vector<double> line_zeros(const PowerSeries& g, long k, const ScanConfig& scfg = {},
                               const EvalConfig& cfg = {});

struct Lambda {
  bool infinite = true;
  Rational value;
  static Lambda inf() { return Lambda{}; }
  static Lambda finite(const Rational& v) { return Lambda{false, v}; }
};

int cusp_order(const QuasiModularForm& f, const Lambda& lambda);

struct BoundarySpectrum {
  std::vector<ArcZero> arc;      // zeros of f1 on [pi/2, 2*pi/3], descending
  std::vector<int> signs_arc;    // sgn of the hat of f there
  std::vector<double> line;      // Im parts of line zeros of f1, ascending
  std::vector<int> signs_line;   // sgn f(z_j), j >= 1
  int sign_at_rho = 0;           // sgn f(rho) (z_0)
  int r = 0;                     // r(f1)
  int v_rho = 0;                 // v_rho(f1)
  int s = 0;                     // s(f)
  nlohmann::json to_json() const;
};

BoundarySpectrum spectrum(const QuasiModularForm& f, const ScanConfig& scfg = {},
                          const EvalConfig& cfg = {});

struct CGLCounts {
  Rational C;
  long L = 0;
  bool rho_flag = false;
};

CGLCounts cgl(const PowerSeries& g, long k, const ScanConfig& scfg = {},
              const EvalConfig& cfg = {});

}  // namespace qmz
