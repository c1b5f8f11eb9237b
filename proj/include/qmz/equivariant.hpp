#pragma once
#include <iosfwd>

#include "qmz/eval.hpp"

namespace qmz {

// depth-1 companion map h = tau + (12 / 2 pi i) f1(tau) / f(tau)
Cx h_depth1(const QuasiModularForm& f, Cx tau, const EvalConfig& cfg = {});

// all p branches of the companion map at tau, from the degree-p polynomial
// sum_j (d^j f)(tau)/j! u^j = 0 via u = 1/(2 pi i (tau - h)); residual-checked
std::vector<Cx> h_roots(const QuasiModularForm& f, Cx tau, const EvalConfig& cfg = {});

// branch values along a path, matched by continuity (step-halving on clashes)
std::vector<std::vector<Cx>> track_h(const QuasiModularForm& f, const std::vector<Cx>& path,
                                     const EvalConfig& cfg = {});

// named bifurcation values: "v" and "v_inv" for the critical-point form
// E2^2 - E4, "t1" for the pencil E4 - t E2^2
double find_threshold(const std::string& name, double tol = 1e-6);

struct CurveSample {
  Cx z;
  Cx h;
  int branch = 0;
  bool im_sign_change = false;  // Im h crosses zero between this sample and the previous
};

std::vector<CurveSample> sample_curves(const QuasiModularForm& f, int nx, int ny, double y_min,
                                       double y_max, bool parallel = true,
                                       const EvalConfig& cfg = {});

void write_curves_csv(std::ostream& os, const std::vector<CurveSample>& samples);

}  // namespace qmz
