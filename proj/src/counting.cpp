#include "qmz/counting.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

namespace qmz {

namespace {

const double kPi = 4.0 * std::atan(1.0);
const double kR3 = std::sqrt(3.0) / 2.0;
const Cx kRho(-0.5, kR3);
const Cx kRhoP1(0.5, kR3);
const Cx kI(0.0, 1.0);

struct PathZero {
  Cx z;        // refined zero location
  Cx center;   // point on the segment to bump around
  long mult;
};

struct MinTracker {
  double v = 1e300;
  void feed(double x) { v = std::min(v, x); }
};

double phase_delta(const CFn& fn, Cx a, Cx b, Cx ga, Cx gb, double max_step, MinTracker& mt,
                   int depth) {
  double d = std::arg(gb / ga);
  if (std::abs(d) <= max_step) return d;
  if (depth >= 26) throw ContourThroughZeroError("phase step refinement exhausted");
  Cx m = 0.5 * (a + b), gm = fn(m);
  mt.feed(std::abs(gm));
  return phase_delta(fn, a, m, ga, gm, max_step, mt, depth + 1) +
         phase_delta(fn, m, b, gm, gb, max_step, mt, depth + 1);
}

Cx newton_zero(const CFn& fn, Cx z0) {
  Cx z = z0;
  for (int it = 0; it < 60; ++it) {
    double h = 1e-7 * (1.0 + std::abs(z));
    Cx g = fn(z);
    Cx d = (fn(z + h) - fn(z - h)) / (2.0 * h);
    if (std::abs(d) == 0.0) break;
    Cx step = g / d;
    z -= step;
    if (std::abs(step) < 1e-13) break;
    if (std::abs(z - z0) > 0.05) break;  // wandered off; caller re-checks
  }
  return z;
}

}  // namespace

long winding_number(const std::vector<Cx>& path, const CFn& fn, double max_phase_step,
                    double residual_tol, double min_abs) {
  MinTracker mt;
  std::vector<Cx> vals(path.size());
  for (size_t i = 0; i < path.size(); ++i) {
    vals[i] = fn(path[i]);
    mt.feed(std::abs(vals[i]));
  }
  double total = 0.0;
  for (size_t i = 0; i + 1 < path.size(); ++i)
    total += phase_delta(fn, path[i], path[i + 1], vals[i], vals[i + 1], max_phase_step, mt, 0);
  total += phase_delta(fn, path.back(), path.front(), vals.back(), vals.front(), max_phase_step,
                       mt, 0);
  if (mt.v < min_abs) throw ContourThroughZeroError("contour passes too close to a zero");
  double turns = total / (2.0 * kPi);
  long n = std::lround(turns);
  if (std::abs(turns - n) > residual_tol)
    throw ContourThroughZeroError("non-integer winding residual");
  return n;
}

long circle_winding(const CFn& fn, Cx center, double radius, double max_phase_step) {
  std::vector<Cx> pts;
  for (int i = 0; i < 64; ++i)
    pts.push_back(center + radius * std::exp(Cx(0.0, 2.0 * kPi * i / 64)));
  return winding_number(pts, fn, max_phase_step, 0.05, 1e-300);
}

Rational domain_weight(Cx z, double tol) {
  if (std::abs(z - kRho) < tol) return Rational(1, 3);
  if (std::abs(z - kI) < tol) return Rational(1, 2);
  if (std::abs(z - kRhoP1) < tol) return 0;
  double x = z.real(), r = std::abs(z);
  if (x < -0.5 - tol || x > 0.5 - tol) {
    // on or beyond R (x near +1/2 counts as R, excluded)
    if (std::abs(x - 0.5) < tol && r > 1.0 - tol) return 0;
    if (std::abs(x + 0.5) < tol && r > 1.0 - tol) return 1;  // on L
    return 0;
  }
  if (std::abs(x + 0.5) < tol && r > 1.0 - tol) return 1;  // on L
  if (std::abs(r - 1.0) < tol) {
    double th = std::arg(z);
    return th > kPi / 2 + tol ? Rational(1) : Rational(0);  // left arc in, right out
  }
  if (r > 1.0 && x > -0.5 - tol && x < 0.5 - tol) return 1;  // interior
  return 0;
}

Cx target_function(const QuasiModularForm& f, const Lambda& lambda, Cx tau) {
  Cx u = 0.0;
  if (!lambda.infinite) u = 1.0 / (Cx(0.0, 2.0 * kPi) * (tau - Cx(lambda.value.get_d(), 0.0)));
  Cx acc = 0.0, up = 1.0;
  double fact = 1.0;
  for (int j = 0; j <= f.depth(); ++j) {
    if (j) {
      fact *= j;
      up *= u;
    }
    acc += eval_qm(frak_d(f, j), tau) / fact * up;
  }
  return acc;
}

namespace {

// series of absolute coefficient values; its value at |q| bounds the terms
// that enter the evaluation and so measures the attainable precision there
PowerSeries abs_series(const PowerSeries& s) {
  std::vector<Rational> c;
  for (int n = 0; n <= s.order(); ++n) c.push_back(abs(s.at(n)));
  return PowerSeries::exact(std::move(c));
}

// normalized target q^{-v} F_lambda, divided pointwise by a positive envelope
// so values are relative to the local evaluation scale.  Scaling by a positive
// real function changes neither the zeros nor the winding, but it makes the
// closeness thresholds meaningful for forms with very small or very large
// coefficients.  Each derivation image is factored as q^{w_j} g_j with
// g_j(0) != 0 and v = min w_j, so only nonnegative powers of q are evaluated
// and the top of the contour stays overflow-free.
struct Target {
  std::vector<CompiledSeries> gs;
  std::vector<CompiledSeries> envs;  // abs-coefficient companions of gs
  std::vector<int> shifts;           // w_j - v >= 0
  bool inf = true;
  double lambda = 0.0;
  int v = 0;

  Cx operator()(Cx tau) const {
    Cx q = q_of(tau);
    Cx u = 0.0, acc = 0.0, up = 1.0;
    double qa = std::abs(q), ua = 0.0, upa = 1.0, env = 0.0;
    if (!inf) {
      u = 1.0 / (Cx(0.0, 2.0 * kPi) * (tau - lambda));
      ua = std::abs(u);
    }
    double fact = 1.0;
    for (size_t j = 0; j < gs.size(); ++j) {
      if (j) {
        fact *= static_cast<double>(j);
        up *= u;
        upa *= ua;
      }
      Cx term = gs[j].eval(q) / fact * up;
      double mag = envs[j].eval(Cx(qa, 0.0)).real() / fact * upa;
      for (int s = 0; s < shifts[j]; ++s) {
        term *= q;
        mag *= qa;
      }
      acc += term;
      env += mag;
    }
    return acc / env;
  }
};

Target make_target(const QuasiModularForm& f, bool inf, double lambda) {
  Target t;
  t.inf = inf;
  t.lambda = lambda;
  int top = inf ? 0 : f.depth();
  std::vector<PowerSeries> exp;
  std::vector<int> w;
  t.v = -1;
  for (int j = 0; j <= top; ++j) {
    exp.push_back(frak_d(f, j).expand());
    int wj = exp.back().first_nonzero();
    if (wj < 0) throw IndeterminateError("derivation image vanishes to the truncation order");
    w.push_back(wj);
    if (t.v < 0 || wj < t.v) t.v = wj;
  }
  for (int j = 0; j <= top; ++j) {
    PowerSeries g = exp[j].shift_down(w[j]);
    t.gs.push_back(compile_series(g));
    t.envs.push_back(compile_series(abs_series(g)));
    t.shifts.push_back(w[j] - t.v);
  }
  return t;
}

// scan a parametrized segment for zeros of fn on or within eps of it
void scan_segment(const CFn& fn, const std::function<Cx(double)>& seg, double a, double b,
                  int samples, double eps, const std::vector<Cx>& corners, bool parallel,
                  std::vector<PathZero>& out) {
  std::vector<double> mag(samples + 1);
  if (parallel) {
#pragma omp parallel for
    for (int i = 0; i <= samples; ++i) mag[i] = std::abs(fn(seg(a + (b - a) * i / samples)));
  } else {
    for (int i = 0; i <= samples; ++i) mag[i] = std::abs(fn(seg(a + (b - a) * i / samples)));
  }
  double segmax = *std::max_element(mag.begin(), mag.end());
  double dip = 1e-6 * std::max(1.0, segmax), zero_tol = 1e-8 * std::max(1.0, segmax);
  for (int i = 0; i <= samples; ++i) {
    if (i > 0 && mag[i - 1] < mag[i]) continue;
    if (i < samples && mag[i + 1] < mag[i]) continue;
    // a zero within one sample spacing forces |f| at the minimum to be small
    // relative to the drop from its neighbors; otherwise only a hard dip counts
    double drop = 0.0;
    if (i > 0) drop = std::max(drop, mag[i - 1] - mag[i]);
    if (i < samples) drop = std::max(drop, mag[i + 1] - mag[i]);
    if (mag[i] > 3.0 * drop + dip) continue;
    double s = a + (b - a) * i / samples;
    Cx z0 = seg(s), z = newton_zero(fn, z0);
    if (std::abs(fn(z)) > zero_tol) continue;  // shallow dip, not a zero
    bool skip = false;
    for (Cx c : corners) skip = skip || std::abs(z - c) < 2.0 * eps;
    for (const auto& pz : out) skip = skip || std::abs(z - pz.z) < 1e-7;
    if (skip) continue;
    // project back onto the segment for the bump center
    double lo = std::min(a, b), hi = std::max(a, b);
    double best = s, bd = std::abs(seg(s) - z);
    double span = std::abs(b - a) * 10.0 / samples;
    for (int t = -40; t <= 40; ++t) {
      double ss = std::min(std::max(s + span * t / 40.0, lo), hi);
      double d = std::abs(seg(ss) - z);
      if (d < bd) bd = d, best = ss;
    }
    for (double step = span / 40.0; step > 1e-12; step *= 0.5) {
      for (int dir = -1; dir <= 1; dir += 2) {
        double ss = std::min(std::max(best + dir * step, lo), hi);
        double d = std::abs(seg(ss) - z);
        if (d < bd) bd = d, best = ss;
      }
    }
    if (bd >= 0.9 * eps) continue;  // not actually on the path
    long m = circle_winding(fn, z, 0.5 * eps, 1.2);
    if (m <= 0) throw UnstableCountError("located boundary zero with nonpositive multiplicity");
    out.push_back({z, seg(best), m});
  }
}

void append_bump(std::vector<Cx>& path, Cx center, double r, double psi_from, double psi_to,
                 int steps = 16) {
  for (int i = 0; i <= steps; ++i)
    path.push_back(center + r * std::exp(Cx(0.0, psi_from + (psi_to - psi_from) * i / steps)));
}

struct CornerOutcome {
  Rational weight;
  bool zero_present = false;
};

// full-circle winding around a corner; identifies where the enclosed zero sits
CornerOutcome corner_protocol(const CFn& fn, Cx corner, double eps, Rational corner_w,
                              const std::function<Rational(Cx)>& weigh) {
  CornerOutcome out;
  double scale = 0.0;
  for (int i = 0; i < 32; ++i)
    scale = std::max(scale, std::abs(fn(corner + eps * std::exp(Cx(0.0, 2 * kPi * i / 32)))));
  long m = circle_winding(fn, corner, eps, 1.2);
  if (m == 0) return out;
  if (m < 0) throw UnstableCountError("negative winding around a corner");
  out.zero_present = true;
  if (std::abs(fn(corner)) < 1e-8 * std::max(1.0, scale)) {
    out.weight = corner_w * m;
    return out;
  }
  if (m != 1) throw UnstableCountError("several zeros crowd a corner indentation");
  for (int s = 0; s < 5; ++s) {
    Cx seed = s == 0 ? corner : corner + 0.5 * eps * std::exp(Cx(0.0, kPi * (s - 1) / 2));
    Cx z = newton_zero(fn, seed);
    if (std::abs(fn(z)) < 1e-8 * std::max(1.0, scale) && std::abs(z - corner) < eps) {
      out.weight = weigh(z);
      return out;
    }
  }
  throw UnstableCountError("corner-adjacent zero could not be located");
}

struct RunResult {
  long interior = 0;
  Rational boundary;
  Rational total() const { return Rational(interior) + boundary; }
};

// one pass over the indented boundary of the standard fundamental domain
RunResult run_contour(const CFn& fn, double T, double eps, const ContourConfig& cfg) {
  std::vector<Cx> corners = {kRho, kI, kRhoP1};
  std::vector<PathZero> zeros;
  auto arc_seg = [](double th) { return std::exp(Cx(0.0, th)); };
  auto l_seg = [](double t) { return Cx(-0.5, t); };
  auto r_seg = [](double t) { return Cx(0.5, t); };
  auto top_seg = [T](double x) { return Cx(x, T); };
  int arc_n = static_cast<int>(std::ceil((kPi / 3) / (kPi / cfg.arc_samples)));
  scan_segment(fn, arc_seg, kPi / 3, 2 * kPi / 3, arc_n, eps, corners, cfg.parallel, zeros);
  scan_segment(fn, l_seg, kR3, T, cfg.line_samples, eps, corners, cfg.parallel, zeros);
  scan_segment(fn, r_seg, kR3, T, cfg.line_samples, eps, corners, cfg.parallel, zeros);
  scan_segment(fn, top_seg, -0.5, 0.5, cfg.top_samples, eps, corners, cfg.parallel, zeros);

  RunResult res;
  for (const auto& pz : zeros) res.boundary += domain_weight(pz.z) * pz.mult;

  auto weigh = [](Cx z) { return domain_weight(z); };
  CornerOutcome at_rho = corner_protocol(fn, kRho, eps, Rational(1, 3), weigh);
  CornerOutcome at_i = corner_protocol(fn, kI, eps, Rational(1, 2), weigh);
  CornerOutcome at_rho1 = corner_protocol(fn, kRhoP1, eps, Rational(0), weigh);
  res.boundary += at_rho.weight + at_i.weight + at_rho1.weight;

  // assemble the polyline: arc (with bumps), corner indents, R, top, L
  std::vector<Cx> path;
  std::vector<double> arc_bumps, l_bumps, r_bumps;
  for (const auto& pz : zeros) {
    Cx c = pz.center;
    if (std::abs(std::abs(c) - 1.0) < 1e-9 && std::abs(c.imag() - T) > 1e-9)
      arc_bumps.push_back(std::arg(c));
    else if (std::abs(c.real() + 0.5) < 1e-9)
      l_bumps.push_back(c.imag());
    else if (std::abs(c.real() - 0.5) < 1e-9)
      r_bumps.push_back(c.imag());
    else if (std::abs(c.imag() - T) < 1e-9)
      throw UnstableCountError("zero on the top closure segment");
  }
  if (at_i.zero_present) arc_bumps.push_back(kPi / 2);
  std::sort(arc_bumps.rbegin(), arc_bumps.rend());
  std::sort(l_bumps.begin(), l_bumps.end());
  std::sort(r_bumps.begin(), r_bumps.end());

  double eps_ang = eps;  // unit radius: angle ~ arclength
  {  // arc, theta decreasing
    double th0 = 2 * kPi / 3 - eps_ang, th1 = kPi / 3 + eps_ang;
    size_t next = 0;
    int n = arc_n;
    for (int i = 0; i <= n; ++i) {
      double th = th0 + (th1 - th0) * i / n;
      if (next < arc_bumps.size() && th < arc_bumps[next] + eps_ang) {
        if (th > arc_bumps[next] - eps_ang) continue;
        double tb = arc_bumps[next];
        append_bump(path, std::exp(Cx(0, tb)), eps, tb + kPi / 2, tb - kPi / 2);
        ++next;
      }
      path.push_back(arc_seg(th));
    }
  }
  append_bump(path, kRhoP1, eps, 5 * kPi / 6, kPi / 2);  // corner indent at rho+1
  {  // R, t increasing
    size_t next = 0;
    for (int i = 0; i <= cfg.line_samples; ++i) {
      double t = (kR3 + eps) + (T - kR3 - eps) * i / cfg.line_samples;
      if (next < r_bumps.size() && t > r_bumps[next] - eps) {
        if (t < r_bumps[next] + eps) continue;
        double tb = r_bumps[next];
        append_bump(path, Cx(0.5, tb), eps, -kPi / 2, -3 * kPi / 2);
        ++next;
      }
      path.push_back(r_seg(t));
    }
  }
  for (int i = 0; i <= cfg.top_samples; ++i)
    path.push_back(top_seg(0.5 - 1.0 * i / cfg.top_samples));
  {  // L, t decreasing
    std::vector<double> lb(l_bumps.rbegin(), l_bumps.rend());
    size_t next = 0;
    for (int i = 0; i <= cfg.line_samples; ++i) {
      double t = T + (kR3 + eps - T) * i / cfg.line_samples;
      if (next < lb.size() && t < lb[next] + eps) {
        if (t > lb[next] - eps) continue;
        double tb = lb[next];
        append_bump(path, Cx(-0.5, tb), eps, kPi / 2, -kPi / 2);
        ++next;
      }
      path.push_back(l_seg(t));
    }
  }
  append_bump(path, kRho, eps, kPi / 2, kPi / 6);  // corner indent at rho

  res.interior = winding_number(path, fn, cfg.max_phase_step, cfg.residual_tol, cfg.min_abs);
  return res;
}

RunResult counted_with_retries(const CFn& fn, const ContourConfig& cfg) {
  double eps = cfg.indent_radius;
  for (int attempt = 0;; ++attempt) {
    try {
      RunResult r1 = run_contour(fn, cfg.top_height, eps, cfg);
      RunResult r2 = run_contour(fn, 2.0 * cfg.top_height, 0.5 * eps, cfg);
      if (r1.total() != r2.total())
        throw UnstableCountError("contour perturbation changed the count");
      return r1;
    } catch (const Error&) {
      if (attempt + 1 >= cfg.refinement_limit) throw;
      eps *= 0.5;
    }
  }
}

}  // namespace

nlohmann::json ZeroCountReport::to_json() const {
  nlohmann::json j;
  j["lambda"] = lambda;
  j["n"] = rat_str(n);
  j["breakdown"] = {{"interior", breakdown.interior},
                    {"boundary", rat_str(breakdown.boundary)},
                    {"cusp", breakdown.cusp}};
  j["method"] = method;
  return j;
}

ZeroCountReport count_zeros(const QuasiModularForm& f, const Lambda& lambda,
                            const ContourConfig& cfg) {
  if (f.is_zero()) throw DomainError("count_zeros of the zero form");
  Target t = make_target(f, lambda.infinite, lambda.infinite ? 0.0 : lambda.value.get_d());
  RunResult r = counted_with_retries([&t](Cx z) { return t(z); }, cfg);
  ZeroCountReport rep;
  rep.lambda = lambda.infinite ? "inf" : rat_str(lambda.value);
  rep.breakdown = {r.interior, r.boundary, t.v};
  rep.n = r.total() + t.v;
  rep.method = "contour";
  if (sgn(rep.n) < 0) throw UnstableCountError("negative zero count");
  return rep;
}

Rational count_zeros_real(const QuasiModularForm& f, double lambda, const ContourConfig& cfg) {
  if (f.is_zero()) throw DomainError("count_zeros of the zero form");
  Target t = make_target(f, false, lambda);
  RunResult r = counted_with_retries([&t](Cx z) { return t(z); }, cfg);
  return r.total() + t.v;
}

Rational count_zeros_series(const PowerSeries& s, const ContourConfig& cfg) {
  int v = s.first_nonzero();
  if (v < 0) throw DomainError("count_zeros_series of the zero series");
  PowerSeries g = s.shift_down(v);
  CompiledSeries cs = compile_series(g), env = compile_series(abs_series(g));
  auto fn = [&cs, &env](Cx tau) {
    Cx q = q_of(tau);
    return cs.eval(q) / env.eval(Cx(std::abs(q), 0.0)).real();
  };
  RunResult r = counted_with_retries(fn, cfg);
  return r.total() + v;
}

namespace {

const Cx kApex(0.5, 0.5);

Rational domain_weight_g02(Cx z, double tol = 1e-6) {
  if (std::abs(z - kApex) < tol) return Rational(1, 2);
  double x = z.real(), r = std::abs(z - Cx(0.5, 0.0));
  if (std::abs(x) < tol && r > 0.5 - tol) return 1;  // left edge in
  if (std::abs(x - 1.0) < tol) return 0;             // right edge out
  if (std::abs(r - 0.5) < tol) {
    double phi = std::arg(z - Cx(0.5, 0.0));
    return phi > kPi / 2 + tol ? Rational(1) : Rational(0);  // left half-circle in
  }
  if (x > -tol && x < 1.0 - tol && r > 0.5) return 1;
  return 0;
}

RunResult run_contour_g02(const CFn& fn, double T, double eps, double t0,
                          const ContourConfig& cfg) {
  Cx O(0.5, 0.0);
  double phi0 = kPi - std::asin(2.0 * t0), phi1 = std::asin(2.0 * t0);
  std::vector<Cx> corners = {kApex};
  std::vector<PathZero> zeros;
  auto circ = [O](double phi) { return O + 0.5 * std::exp(Cx(0.0, phi)); };
  auto le = [](double t) { return Cx(0.0, t); };
  auto re = [](double t) { return Cx(1.0, t); };
  auto top = [T](double x) { return Cx(x, T); };
  Cx c0 = circ(phi0), c1 = circ(phi1);
  auto chord0 = [c0, t0](double s) { return Cx(0.0, t0) + s * (c0 - Cx(0.0, t0)); };
  auto chord1 = [c1, t0](double s) { return c1 + s * (Cx(1.0, t0) - c1); };
  int circ_n = cfg.arc_samples;
  scan_segment(fn, circ, phi1, phi0, circ_n, eps, corners, cfg.parallel, zeros);
  scan_segment(fn, le, t0, T, cfg.line_samples, eps, corners, cfg.parallel, zeros);
  scan_segment(fn, re, t0, T, cfg.line_samples, eps, corners, cfg.parallel, zeros);
  scan_segment(fn, top, 0.0, 1.0, cfg.top_samples, eps, corners, cfg.parallel, zeros);
  scan_segment(fn, chord0, 0.0, 1.0, 200, eps, corners, cfg.parallel, zeros);
  scan_segment(fn, chord1, 0.0, 1.0, 200, eps, corners, cfg.parallel, zeros);

  RunResult res;
  for (const auto& pz : zeros) res.boundary += domain_weight_g02(pz.z) * pz.mult;
  CornerOutcome at_apex = corner_protocol(fn, kApex, eps, Rational(1, 2),
                                          [](Cx z) { return domain_weight_g02(z); });
  res.boundary += at_apex.weight;

  std::vector<double> circ_bumps, le_bumps, re_bumps;
  for (const auto& pz : zeros) {
    Cx c = pz.center;
    if (std::abs(std::abs(c - O) - 0.5) < 1e-9)
      circ_bumps.push_back(std::arg(c - O));
    else if (std::abs(c.real()) < 1e-9)
      le_bumps.push_back(c.imag());
    else if (std::abs(c.real() - 1.0) < 1e-9)
      re_bumps.push_back(c.imag());
    else
      throw UnstableCountError("zero on a truncation segment");
  }
  std::sort(circ_bumps.rbegin(), circ_bumps.rend());
  std::sort(le_bumps.begin(), le_bumps.end());
  std::sort(re_bumps.begin(), re_bumps.end());

  std::vector<Cx> path;
  path.push_back(Cx(0.0, t0));
  for (int i = 1; i < 50; ++i) path.push_back(chord0(i / 50.0));
  {  // big circle, phi decreasing, apex indent always
    double eps_ang = 2.0 * eps;  // radius 1/2
    size_t next = 0;
    bool apex_done = false;
    for (int i = 0; i <= circ_n; ++i) {
      double phi = phi0 + (phi1 - phi0) * i / circ_n;
      if (!apex_done && phi < kPi / 2 + eps_ang) {
        append_bump(path, kApex, eps, kPi, 0.0);
        apex_done = true;
      }
      if (std::abs(phi - kPi / 2) < eps_ang) continue;  // replaced by the apex bump
      if (next < circ_bumps.size() && phi < circ_bumps[next] + eps_ang) {
        if (phi > circ_bumps[next] - eps_ang) continue;
        double pb = circ_bumps[next];
        // travel direction along the circle maps to a tangent-aligned bump
        Cx c = circ(pb);
        double tang = pb - kPi / 2;  // direction of travel at pb (phi decreasing)
        append_bump(path, c, eps, tang + kPi, tang);
        ++next;
      }
      path.push_back(circ(phi));
    }
  }
  for (int i = 1; i < 50; ++i) path.push_back(chord1(i / 50.0));
  {  // right edge up
    size_t next = 0;
    for (int i = 0; i <= cfg.line_samples; ++i) {
      double t = t0 + (T - t0) * i / cfg.line_samples;
      if (next < re_bumps.size() && t > re_bumps[next] - eps) {
        if (t < re_bumps[next] + eps) continue;
        append_bump(path, Cx(1.0, re_bumps[next]), eps, -kPi / 2, -3 * kPi / 2);
        ++next;
      }
      path.push_back(re(t));
    }
  }
  for (int i = 0; i <= cfg.top_samples; ++i) path.push_back(top(1.0 - 1.0 * i / cfg.top_samples));
  {  // left edge down
    std::vector<double> lb(le_bumps.rbegin(), le_bumps.rend());
    size_t next = 0;
    for (int i = 0; i <= cfg.line_samples; ++i) {
      double t = T + (t0 - T) * i / cfg.line_samples;
      if (next < lb.size() && t < lb[next] + eps) {
        if (t > lb[next] - eps) continue;
        append_bump(path, Cx(0.0, lb[next]), eps, kPi / 2, -kPi / 2);
        ++next;
      }
      path.push_back(le(t));
    }
  }
  res.interior = winding_number(path, fn, cfg.max_phase_step, cfg.residual_tol, cfg.min_abs);
  return res;
}

}  // namespace

Rational count_zeros_gamma02(const QuasiModularForm& f, const Gamma2& g,
                             const ContourConfig& cfg) {
  if (g.a * g.d - g.b * g.c != 1 || g.c % 2 != 0)
    throw DomainError("matrix is not in the level-2 group");
  bool inf = g.c == 0;
  double lambda = inf ? 0.0 : -static_cast<double>(g.d) / g.c;
  Target t = make_target(f, inf, lambda);
  int nu_inf = t.v;
  int nu_zero = cusp_order(f, g.d == 0 ? Lambda::inf() : Lambda::finite(0));
  CFn fn = [&t](Cx z) { return t(z); };
  double eps = cfg.indent_radius;
  for (int attempt = 0;; ++attempt) {
    try {
      RunResult r1 = run_contour_g02(fn, cfg.top_height, eps, cfg.gamma02_t0, cfg);
      RunResult r2 = run_contour_g02(fn, 2 * cfg.top_height, 0.5 * eps, 0.40, cfg);
      if (r1.total() != r2.total())
        throw UnstableCountError("contour perturbation changed the count");
      return r1.total() + nu_inf + nu_zero;
    } catch (const Error&) {
      if (attempt + 1 >= cfg.refinement_limit) throw;
      eps *= 0.5;
    }
  }
}

}  // namespace qmz
