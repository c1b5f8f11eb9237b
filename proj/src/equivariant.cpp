#include "qmz/equivariant.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <Eigen/Eigenvalues>

namespace qmz {

namespace {
const double kPi = 4.0 * std::atan(1.0);

std::vector<Cx> croots(const std::vector<Cx>& p) {
  int deg = static_cast<int>(p.size()) - 1;
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
  for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -p[i] / p[deg];
  for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp);
  std::vector<Cx> roots;
  for (int i = 0; i < deg; ++i) roots.push_back(es.eigenvalues()(i));
  return roots;
}

struct HEvaluator {
  std::vector<CompiledForm> djs;  // d^j f for j = 0..p
  int p = 0;

  explicit HEvaluator(const QuasiModularForm& f) : p(f.depth()) {
    for (int j = 0; j <= p; ++j) djs.push_back(CompiledForm::compile(frak_d(f, j)));
  }

  std::vector<Cx> roots(Cx tau) const {
    std::vector<Cx> c(p + 1);
    double fact = 1.0;
    for (int j = 0; j <= p; ++j) {
      if (j) fact *= j;
      c[j] = djs[j].eval_fast(tau) / fact;
    }
    double scale = 0.0;
    for (const Cx& v : c) scale = std::max(scale, std::abs(v));
    if (std::abs(c[p]) < 1e-12 * scale)
      throw PrecisionError("top coefficient vanishes: a branch escapes to tau");
    std::vector<Cx> us = croots(c);
    std::vector<Cx> hs;
    for (Cx u : us) {
      Cx pu = 0.0;
      for (int j = p; j >= 0; --j) pu = pu * u + c[j];
      double um = std::max(1.0, std::abs(u));
      double res_scale = scale * std::pow(um, p);
      if (std::abs(pu) > 1e-9 * res_scale) throw PrecisionError("companion root residual too large");
      hs.push_back(tau - 1.0 / (Cx(0.0, 2.0 * kPi) * u));
    }
    return hs;
  }
};

// greedy continuity matching of new roots to the previous branch order
std::vector<Cx> match_branches(const std::vector<Cx>& prev, std::vector<Cx> cur) {
  std::vector<Cx> out(prev.size());
  std::vector<bool> used(cur.size(), false);
  for (size_t i = 0; i < prev.size(); ++i) {
    size_t best = 0;
    double bd = 1e300;
    for (size_t j = 0; j < cur.size(); ++j) {
      if (used[j]) continue;
      double d = std::abs(cur[j] - prev[i]);
      if (d < bd) bd = d, best = j;
    }
    used[best] = true;
    out[i] = cur[best];
  }
  return out;
}

bool ambiguous(const std::vector<Cx>& prev, const std::vector<Cx>& cur) {
  // matching is ambiguous if a new root sits nearly equidistant from two old ones
  for (size_t j = 0; j < cur.size(); ++j) {
    double d1 = 1e300, d2 = 1e300;
    for (size_t i = 0; i < prev.size(); ++i) {
      double d = std::abs(cur[j] - prev[i]);
      if (d < d1) d2 = d1, d1 = d;
      else if (d < d2) d2 = d;
    }
    if (prev.size() > 1 && d2 < 2.0 * d1 + 1e-6) return true;
  }
  return false;
}

std::vector<Cx> advance(const HEvaluator& he, const std::vector<Cx>& prev, Cx from, Cx to,
                        int depth) {
  std::vector<Cx> cur = he.roots(to);
  if (!ambiguous(prev, cur) || depth >= 20) return match_branches(prev, cur);
  Cx mid = 0.5 * (from + to);
  std::vector<Cx> half = advance(he, prev, from, mid, depth + 1);
  return advance(he, half, mid, to, depth + 1);
}

}  // namespace

Cx h_depth1(const QuasiModularForm& f, Cx tau, const EvalConfig& cfg) {
  if (f.depth() != 1) throw DomainError("h_depth1 needs a depth-1 form");
  Cx fv = eval_qm(f, tau, cfg);
  Cx f1v = eval_qm(qm_modular(f.components[1], f.weight - 2), tau, cfg);
  return tau + Cx(12.0, 0.0) / Cx(0.0, 2.0 * kPi) * f1v / fv;
}

std::vector<Cx> h_roots(const QuasiModularForm& f, Cx tau, const EvalConfig& cfg) {
  if (f.depth() < 1) throw DomainError("h_roots needs positive depth");
  return HEvaluator(f).roots(tau);
}

std::vector<std::vector<Cx>> track_h(const QuasiModularForm& f, const std::vector<Cx>& path,
                                     const EvalConfig& cfg) {
  HEvaluator he(f);
  std::vector<std::vector<Cx>> out;
  out.push_back(he.roots(path.at(0)));
  for (size_t i = 1; i < path.size(); ++i)
    out.push_back(advance(he, out.back(), path[i - 1], path[i], 0));
  return out;
}

namespace {

double bisect_real(const std::function<double(double)>& fn, double a, double b, double tol) {
  double fa = fn(a);
  while (b - a > tol) {
    double m = 0.5 * (a + b), fm = fn(m);
    if (fa * fm <= 0.0)
      b = m;
    else
      a = m, fa = fm;
  }
  return 0.5 * (a + b);
}

}  // namespace

double find_threshold(const std::string& name, double tol) {
  if (name == "t1") {
    // sign change of the hat of E4 - t E2^2 at the angle pi/2
    int order = 64;
    auto e4 = qm_modular(eisenstein(4, order), 4);
    auto e2sq = qm_mul(qm_e2(order), qm_e2(order));
    double a4 = hat_eval(e4, kPi / 2).real();
    double a2 = hat_eval(e2sq, kPi / 2).real();
    auto fn = [&](double t) { return a4 - t * a2; };
    return bisect_real(fn, 0.0, 3.0, tol);
  }
  if (name == "v" || name == "v_inv") {
    // arc angle where a branch of the companion map of E2^2 - E4 turns real
    int order = 64;
    auto f = qm_sub(qm_mul(qm_e2(order), qm_e2(order)), qm_modular(eisenstein(4, order), 4));
    HEvaluator he(f);
    auto at = [](double th) { return Cx(std::cos(th), std::sin(th)); };
    int n = 2000;
    double th0 = kPi / 3 + 0.02, th1 = 2 * kPi / 3 - 0.02;
    std::vector<Cx> path;
    for (int i = 0; i <= n; ++i) path.push_back(at(th0 + (th1 - th0) * i / n));
    std::vector<std::vector<Cx>> tracks = track_h(f, path);
    std::vector<double> crossings;
    for (size_t b = 0; b < tracks[0].size(); ++b) {
      for (int i = 0; i < n; ++i) {
        double y0 = tracks[i][b].imag(), y1 = tracks[i + 1][b].imag();
        if (y0 == 0.0 || y0 * y1 >= 0.0) continue;
        // bisect the crossing angle with continuity-anchored branch values
        double lo = th0 + (th1 - th0) * i / n, hi = th0 + (th1 - th0) * (i + 1) / n;
        std::vector<Cx> anchor = tracks[i];
        Cx zlo = path[i];
        while (hi - lo > 1e-10) {
          double m = 0.5 * (lo + hi);
          std::vector<Cx> hm = advance(he, anchor, zlo, at(m), 0);
          if (hm[b].imag() * y0 > 0.0) {
            lo = m;
            anchor = hm;
            zlo = at(m);
          } else {
            hi = m;
          }
        }
        std::vector<Cx> hc = advance(he, anchor, zlo, at(0.5 * (lo + hi)), 0);
        crossings.push_back(std::abs(hc[b].real()));
      }
    }
    if (crossings.empty()) throw NotFoundError("no real crossing of the companion branches");
    double best = crossings[0];
    for (double c : crossings)
      if ((name == "v") == (c > best)) best = c;
    if (name == "v" && best <= 1.0) throw NotFoundError("no crossing beyond the unit circle");
    if (name == "v_inv" && best >= 1.0) throw NotFoundError("no crossing inside the unit circle");
    return best;
  }
  throw NotFoundError("unknown threshold name: " + name);
}

std::vector<CurveSample> sample_curves(const QuasiModularForm& f, int nx, int ny, double y_min,
                                       double y_max, bool parallel, const EvalConfig& cfg) {
  if (f.depth() < 1) throw DomainError("depth-0 forms have no companion branches");
  HEvaluator he(f);
  int p = f.depth();
  std::vector<std::vector<CurveSample>> cols(nx + 1);
  auto fill_column = [&](int ix) {
    double x = -0.5 + 1.0 * ix / nx;
    std::vector<CurveSample>& col = cols[ix];
    std::vector<Cx> prev;
    Cx prev_z;
    for (int iy = 0; iy <= ny; ++iy) {
      double y = y_min + (y_max - y_min) * iy / ny;
      Cx z(x, y);
      if (std::abs(z) < 1.0) continue;  // below the arc
      std::vector<Cx> hs;
      try {
        hs = prev.empty() ? he.roots(z) : advance(he, prev, prev_z, z, 0);
      } catch (const PrecisionError&) {
        prev.clear();
        continue;  // branch degenerates at this grid point; restart the column
      }
      for (int b = 0; b < p; ++b) {
        bool flip = !prev.empty() && prev[b].imag() * hs[b].imag() < 0.0;
        col.push_back({z, hs[b], b, flip});
      }
      prev = hs;
      prev_z = z;
    }
  };
  if (parallel) {
#pragma omp parallel for
    for (int ix = 0; ix <= nx; ++ix) fill_column(ix);
  } else {
    for (int ix = 0; ix <= nx; ++ix) fill_column(ix);
  }
  std::vector<CurveSample> out;
  for (const auto& col : cols) out.insert(out.end(), col.begin(), col.end());
  return out;
}

void write_curves_csv(std::ostream& os, const std::vector<CurveSample>& samples) {
  os << "re_z,im_z,re_h,im_h,branch_id\n";
  for (const auto& s : samples)
    os << s.z.real() << ',' << s.z.imag() << ',' << s.h.real() << ',' << s.h.imag() << ','
       << s.branch << '\n';
}

}  // namespace qmz
