#include "qmz/boundary.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

namespace qmz {

namespace {
const double kPi = 4.0 * std::atan(1.0);
const double kRho3 = std::sqrt(3.0) / 2.0;
}  // namespace

std::vector<std::pair<double, double>> sign_change_scan(
    const std::function<double(double)>& fn, double a, double b, int samples, bool parallel) {
  std::vector<double> vals(samples + 1);
  if (parallel) {
#pragma omp parallel for
    for (int i = 0; i <= samples; ++i) vals[i] = fn(a + (b - a) * i / samples);
  } else {
    for (int i = 0; i <= samples; ++i) vals[i] = fn(a + (b - a) * i / samples);
  }
  std::vector<std::pair<double, double>> brackets;
  for (int i = 0; i < samples; ++i) {
    double x0 = a + (b - a) * i / samples, x1 = a + (b - a) * (i + 1) / samples;
    if (vals[i] == 0.0) continue;  // counted by the bracket ending here
    if (vals[i] * vals[i + 1] < 0.0 || (vals[i + 1] == 0.0 && i + 1 == samples))
      brackets.emplace_back(x0, x1);
  }
  return brackets;
}

double bisect(const std::function<double(double)>& fn, double a, double b, double tol) {
  double fa = fn(a);
  for (int it = 0; it < 200 && b - a > tol; ++it) {
    double m = 0.5 * (a + b), fm = fn(m);
    if (fm == 0.0) return m;
    if (fa * fm < 0.0)
      b = m;
    else
      a = m, fa = fm;
  }
  return 0.5 * (a + b);
}

namespace {

// locate simple zeros of fn on (a, b); rescans once at 4x on near-collisions,
// and flags |fn| dips without sign change as suspected even-order zeros
std::vector<double> interior_zeros(const std::function<double(double)>& fn, double a, double b,
                                   int samples, const ScanConfig& scfg) {
  for (int attempt = 0;; ++attempt) {
    auto brackets = sign_change_scan(fn, a, b, samples, scfg.parallel);
    std::vector<double> zeros;
    for (auto [x0, x1] : brackets) zeros.push_back(bisect(fn, x0, x1, scfg.bisect_tol));
    bool collision = false;
    for (size_t i = 1; i < zeros.size(); ++i)
      if (zeros[i] - zeros[i - 1] < scfg.collision_tol) collision = true;
    if (collision) {
      if (attempt >= 1) throw MultiplicityAmbiguityError("zeros closer than the collision tolerance");
      samples *= 4;
      continue;
    }
    // dip detection away from the found zeros and the interval ends
    double scale = 0.0, margin = 2.0 * (b - a) / samples + 1e-4;
    std::vector<double> vals(samples + 1);
    for (int i = 0; i <= samples; ++i) vals[i] = std::abs(fn(a + (b - a) * i / samples));
    for (int i = 0; i <= samples; ++i) scale = std::max(scale, vals[i]);
    for (int i = 1; i < samples; ++i) {
      if (vals[i] > vals[i - 1] || vals[i] > vals[i + 1]) continue;
      if (vals[i] > scfg.dip_tol * std::max(1.0, scale)) continue;
      double x = a + (b - a) * i / samples;
      bool known = x - a < margin || b - x < margin;
      for (double z : zeros) known = known || std::abs(x - z) < margin;
      if (!known)
        throw MultiplicityAmbiguityError("magnitude dip without sign change near x=" +
                                         std::to_string(x));
    }
    return zeros;
  }
}

}  // namespace

std::vector<ArcZero> arc_zeros(const PowerSeries& g, long k, const ScanConfig& scfg,
                               const EvalConfig& cfg) {
  if (g.is_zero()) throw DomainError("arc_zeros of the zero form");
  int vr = v_rho_exact(g, k), vi = v_i_exact(g, k);
  CompiledForm cf = CompiledForm::compile(qm_modular(g, k));
  auto hat = [&](double th) {
    return (std::exp(Cx(0.0, 0.5 * k * th)) * cf.eval_fast(Cx(std::cos(th), std::sin(th)))).real();
  };
  double a = kPi / 2, b = 2 * kPi / 3;
  int samples = static_cast<int>(std::ceil((b - a) / (kPi / scfg.arc_samples)));
  // keep clear of forced endpoint zeros where |hat| vanishes to high order
  double pad = (vr || vi) ? 0.01 : 1e-6;
  std::vector<double> interior = interior_zeros(hat, a + pad, b - pad, samples, scfg);
  std::vector<ArcZero> out;
  if (vr > 0) out.push_back({b, Rational(1, 3), vr});
  for (auto it = interior.rbegin(); it != interior.rend(); ++it)
    out.push_back({*it, Rational(1), 1});
  if (vi > 0) out.push_back({a, Rational(1, 2), vi});
  return out;
}

std::vector<ArcZero> arc_zeros_full(const PowerSeries& g, long k, const ScanConfig& scfg,
                                    const EvalConfig& cfg) {
  std::vector<ArcZero> half = arc_zeros(g, k, scfg, cfg);
  std::vector<ArcZero> out;
  std::vector<ArcZero> mirrored;
  for (const auto& z : half) {
    if (z.theta > kPi / 2 + 1e-12 || std::abs(z.theta - kPi / 2) < 1e-12) out.push_back(z);
    if (z.theta > kPi / 2 + 1e-12 && z.theta < 2 * kPi / 3 - 1e-12)
      mirrored.push_back({kPi - z.theta, z.weight, z.multiplicity});
  }
  // mirrored zeros lie in (pi/3, pi/2), appended in descending order
  for (auto it = mirrored.rbegin(); it != mirrored.rend(); ++it) out.push_back(*it);
  return out;
}

std::vector<double> line_zeros(const PowerSeries& g, long k, const ScanConfig& scfg,
                               const EvalConfig& cfg) {
  if (g.is_zero()) throw DomainError("line_zeros of the zero form");
  int v = v_infinity(g);
  // pick T so the leading Fourier term dominates the tail above it
  double T = 1.0;
  for (;; T += 0.25) {
    double lead = std::abs(g.at(v).get_d()) * std::exp(-2 * kPi * v * T);
    double tail = 0.0;
    for (int n = v + 1; n <= g.order(); ++n)
      tail += std::abs(g.at(n).get_d()) * std::exp(-2 * kPi * n * T);
    if (tail < 0.5 * lead) break;
    if (T > 15.0) throw IndeterminateError("no tail-dominated height found");
  }
  CompiledForm cf = CompiledForm::compile(qm_modular(g, k));
  auto fn = [&](double t) { return cf.eval_fast(Cx(-0.5, t)).real(); };
  double a = kRho3 + (v_rho_exact(g, k) > 0 ? 0.01 : 1e-6);
  return interior_zeros(fn, a, T, scfg.line_samples, scfg);
}

int cusp_order(const QuasiModularForm& f, const Lambda& lambda) {
  if (f.is_zero()) throw DomainError("cusp_order of the zero form");
  if (lambda.infinite) {
    int v = v_infinity(f.expand());
    if (v < 0) throw IndeterminateError("all visible coefficients vanish");
    return v;
  }
  int best = -1;
  for (int j = 0; j <= f.depth(); ++j) {
    int v = v_infinity(frak_d(f, j).expand());
    if (v >= 0 && (best < 0 || v < best)) best = v;
  }
  if (best < 0) throw IndeterminateError("all visible coefficients vanish");
  return best;
}

namespace {
int certified_sign(double v, double scale) {
  if (std::abs(v) <= 1e-9 * std::max(1.0, scale))
    throw PreconditionError("sign within tolerance of zero: suspected common zero");
  return v > 0 ? 1 : -1;
}
}  // namespace

BoundarySpectrum spectrum(const QuasiModularForm& f, const ScanConfig& scfg,
                          const EvalConfig& cfg) {
  if (f.depth() != 1) throw DomainError("spectrum needs a depth-1 form");
  const PowerSeries& f1 = f.components[1];
  long k = f.weight;
  BoundarySpectrum sp;
  RhoSign rs = rho_sign(f1, k - 2, cfg);
  sp.r = rs.r;
  sp.v_rho = rs.v_rho;
  sp.s = s_value(f);
  sp.arc = arc_zeros(f1, k - 2, scfg, cfg);
  sp.line = line_zeros(f1, k - 2, scfg, cfg);
  CompiledForm cf = CompiledForm::compile(f);
  auto hat = [&](double th) {
    return (std::exp(Cx(0.0, 0.5 * k * th)) * cf.eval_fast(Cx(std::cos(th), std::sin(th)))).real();
  };
  double scale = 0.0;
  for (int i = 0; i <= 50; ++i) scale = std::max(scale, std::abs(hat(kPi / 2 + kPi / 6 * i / 50)));
  for (const auto& z : sp.arc) sp.signs_arc.push_back(certified_sign(hat(z.theta), scale));
  double lscale = std::abs(cf.eval_fast(Cx(-0.5, kRho3)).real());
  sp.sign_at_rho = certified_sign(cf.eval_fast(Cx(-0.5, kRho3)).real(), lscale);
  for (double t : sp.line)
    sp.signs_line.push_back(certified_sign(cf.eval_fast(Cx(-0.5, t)).real(), lscale));
  return sp;
}

nlohmann::json BoundarySpectrum::to_json() const {
  nlohmann::json j;
  j["arc_angles"] = nlohmann::json::array();
  for (const auto& z : arc)
    j["arc_angles"].push_back({{"theta", z.theta},
                               {"weight", rat_str(z.weight)},
                               {"multiplicity", z.multiplicity}});
  j["signs_arc"] = signs_arc;
  j["line_zeros"] = line;
  j["signs_line"] = signs_line;
  j["sign_at_rho"] = sign_at_rho;
  j["r"] = r;
  j["v_rho"] = v_rho;
  j["s"] = s;
  return j;
}

CGLCounts cgl(const PowerSeries& g, long k, const ScanConfig& scfg, const EvalConfig& cfg) {
  CGLCounts out;
  out.C = 0;
  for (const auto& z : arc_zeros(g, k, scfg, cfg)) out.C += z.weight;
  out.L = static_cast<long>(line_zeros(g, k, scfg, cfg).size()) + (v_infinity(g) > 0 ? 1 : 0);
  out.rho_flag = v_rho_exact(g, k) > 0;
  return out;
}

}  // namespace qmz
