#include "qmz/eval.hpp"

#include <cmath>

namespace qmz {

namespace {
const double kPi = 4.0 * std::atan(1.0);
const double kRho3 = std::sqrt(3.0) / 2.0;
}  // namespace

Cx CompiledSeries::eval_upto(Cx q, int upto) const {
  if (upto >= static_cast<int>(c.size())) upto = static_cast<int>(c.size()) - 1;
  Cx acc = 0.0;
  for (int n = upto; n >= 0; --n) acc = acc * q + c[n];
  return acc;
}

CompiledSeries compile_series(const PowerSeries& s) { return CompiledSeries{s.complex_coeffs()}; }

CompiledForm CompiledForm::compile(const QuasiModularForm& f) {
  CompiledForm cf;
  cf.weight = f.weight;
  cf.order = f.order();
  for (const auto& c : f.components) cf.comps.push_back(compile_series(c.truncate(cf.order)));
  cf.e2 = compile_series(eisenstein(2, cf.order));
  return cf;
}

Cx CompiledForm::eval_q(Cx q, int upto) const {
  Cx e2v = e2.eval_upto(q, upto);
  Cx acc = 0.0;
  for (size_t j = comps.size(); j-- > 0;) acc = acc * e2v + comps[j].eval_upto(q, upto);
  return acc;
}

Cx CompiledForm::eval(Cx tau, const EvalConfig& cfg) const {
  if (tau.imag() < cfg.min_im)
    throw DomainError("evaluation point too close to the real axis");
  Cx q = q_of(tau);
  int nb = cfg.order_b > 0 ? std::min(cfg.order_b, order) : order;
  int na = cfg.order_a > 0 ? std::min(cfg.order_a, nb) : (2 * nb) / 3;
  if (na >= nb) na = nb - 1;
  Cx vb = eval_q(q, nb), va = eval_q(q, na);
  double scale = std::max(1.0, std::abs(vb));
  if (std::abs(vb - va) > cfg.tolerance * scale)
    throw PrecisionError("truncation orders disagree");
  return vb;
}

Cx CompiledForm::eval_fast(Cx tau) const { return eval_q(q_of(tau), order); }

Cx eval_qm(const QuasiModularForm& f, Cx tau, const EvalConfig& cfg) {
  return CompiledForm::compile(f).eval(tau, cfg);
}

Cx hat_eval(const QuasiModularForm& f, double theta, const EvalConfig& cfg) {
  Cx tau(std::cos(theta), std::sin(theta));
  Cx phase = std::exp(Cx(0.0, 0.5 * static_cast<double>(f.weight) * theta));
  return phase * eval_qm(f, tau, cfg);
}

double im_hat(const QuasiModularForm& f, double theta, const EvalConfig& cfg) {
  int p = f.depth();
  Cx acc = 0.0;
  Cx inv2pii = 1.0 / Cx(0.0, 2.0 * kPi);
  Cx coeff = Cx(0.0, 0.5);
  double fact = 1.0;
  for (int m = 1; m <= p; ++m) {
    coeff *= inv2pii;
    fact *= m;
    acc += coeff / fact * hat_eval(frak_d(f, m), theta, cfg);
  }
  return acc.real();
}

RhoSign rho_sign(const PowerSeries& g, long k, const EvalConfig& cfg) {
  if (g.is_zero()) throw DomainError("rho_sign of the zero form");
  RhoSign out;
  out.v_rho = v_rho_exact(g, k);
  CompiledForm cf = CompiledForm::compile(qm_modular(g, k));
  int last = 0, streak = 0;
  for (double t = 0.5; t >= 1e-3; t *= 0.5) {
    Cx v = cf.eval(Cx(-0.5, kRho3 + t), cfg);
    int s = v.real() > 0.0 ? 1 : (v.real() < 0.0 ? -1 : 0);
    if (s != 0 && s == last) {
      if (++streak >= 3) {
        out.r = s;
        return out;
      }
    } else {
      streak = 1;
      last = s;
    }
  }
  throw IndeterminateError("sign near rho failed to stabilize");
}

int s_value(const QuasiModularForm& f) {
  if (f.depth() < 1 || f.components[1].is_zero())
    throw DomainError("s_value needs a depth-1 form with nonzero top component");
  int s0 = sgn(f.expand().at(0));
  if (s0 != 0) return s0;
  const PowerSeries& f1 = f.components[1];
  int n = f1.first_nonzero();
  if (n < 0) throw IndeterminateError("leading coefficient not visible at this order");
  return -sgn(f1.at(n));
}

}  // namespace qmz
