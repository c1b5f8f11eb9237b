#pragma once
#include "qmz/forms.hpp"

namespace qmz {

struct EvalConfig {
  double tolerance = 1e-12;
  int order_a = -1;  // -1: two thirds of order_b
  int order_b = -1;  // -1: full stored order
  double min_im = 0.3;
};

inline Cx q_of(Cx tau) {
  static const double two_pi = 8.0 * std::atan(1.0);
  return std::exp(Cx(0.0, two_pi) * tau);
}

// coefficients flattened to complex doubles; Horner evaluation in q
struct CompiledSeries {
  std::vector<Cx> c;
  Cx eval_upto(Cx q, int upto) const;
  Cx eval(Cx q) const { return eval_upto(q, static_cast<int>(c.size()) - 1); }
};

CompiledSeries compile_series(const PowerSeries& s);

struct CompiledForm {
  long weight = 0;
  std::vector<CompiledSeries> comps;
  CompiledSeries e2;
  int order = 0;

  static CompiledForm compile(const QuasiModularForm& f);
  Cx eval_q(Cx q, int upto) const;
  Cx eval(Cx tau, const EvalConfig& cfg = {}) const;  // two-order agreement
  Cx eval_fast(Cx tau) const;                         // no verification
};

Cx eval_qm(const QuasiModularForm& f, Cx tau, const EvalConfig& cfg = {});

// hat normalization e^{k i theta / 2} f(e^{i theta})
Cx hat_eval(const QuasiModularForm& f, double theta, const EvalConfig& cfg = {});

// imaginary part of the hat via the derivation expansion (independent route)
double im_hat(const QuasiModularForm& f, double theta, const EvalConfig& cfg = {});

struct RhoSign {
  int r = 0;      // limiting sign of g on the vertical line approaching rho
  int v_rho = 0;  // exact vanishing order at rho
};
RhoSign rho_sign(const PowerSeries& g, long k, const EvalConfig& cfg = {});

// sign invariant of a depth-1 form read off the q-expansion
int s_value(const QuasiModularForm& f);

}  // namespace qmz
