#include "qmz/formulas.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace qmz {

namespace {
const double kPi = 4.0 * std::atan(1.0);


// snap a numerically computed count to the nearest multiple of 1/12
Rational round_twelfth(double x) {
  long n = std::lround(12 * x);
  if (std::abs(12 * x - n) > 1e-6 * std::max(1.0, std::abs(12 * x)))
    throw IndeterminateError("count did not settle on a twelfth");
  return frac(n, 12);
}

int sign_certified(double v, double scale) {
  if (std::abs(v) <= 1e-9 * std::max(1.0, scale))
    throw PreconditionError("sign within tolerance of zero: suspected common zero");
  return v > 0 ? 1 : -1;
}
}  // namespace

LambdaClass classify_lambda(const Lambda& lambda) {
  if (lambda.infinite) return {LambdaClass::outer};
  Rational a = abs(lambda.value);
  if (a == Rational(1) || a == Rational(1, 2))
    throw BoundaryLambdaError("lambda on an interval boundary");
  if (a > 1) return {LambdaClass::outer};
  if (a > Rational(1, 2)) return {LambdaClass::mid};
  return {LambdaClass::inner};
}

Rational n_crit(const PowerSeries& g, long k, LambdaClass cls, const ScanConfig& scfg,
                const EvalConfig& cfg) {
  CGLCounts c = cgl(g, k, scfg, cfg);
  Rational base = frac(k, 12);
  switch (cls.kind) {
    case LambdaClass::outer:
      return base + c.C + (c.rho_flag ? frac(1, 3) : Rational(0));
    case LambdaClass::mid:
      return base - c.C;
    default:
      return base - c.C + Rational(c.L);
  }
}

namespace {

// Counts zeros from boundary data only: N = k/12 minus the variation of the
// continuous argument of hat along the arc.  `cross` lists the zeros of
// Im(hat) with multiplicities; between consecutive crossings the argument
// stays inside one half-turn band, so the variation is determined by the
// real-axis signs at the crossings plus the endpoint arguments.
Rational band_count(const std::function<Cx(double)>& hat,
                    std::vector<std::pair<double, int>> cross, long k) {
  const double lo = kPi / 3, hi = 2 * kPi / 3, tol = 1e-9;
  std::sort(cross.begin(), cross.end());
  double scale = 0.0;
  for (int i = 0; i <= 60; ++i)
    scale = std::max(scale, std::abs(hat(lo + (hi - lo) * i / 60)));
  std::vector<int> signs;
  for (const auto& c : cross) signs.push_back(sign_certified(hat(c.first).real(), scale));
  size_t n = cross.size();
  if (n == 0) {
    // the argument never reaches the real axis, so the variation stays within
    // one half-turn band and is read off from the endpoint arguments
    double al = std::arg(hat(lo)) / (2 * kPi), ar = std::arg(hat(hi)) / (2 * kPi);
    return round_twelfth(frac(k, 12).get_d() - (ar - al));
  }
  // the sign of the imaginary part on each gap, anchored at the widest gap and
  // propagated across crossings by multiplicity parity, then cross-checked
  std::vector<double> edges{lo};
  for (const auto& c : cross) edges.push_back(c.first);
  edges.push_back(hi);
  std::vector<double> mids;
  std::vector<bool> empty;
  size_t widest = 0;
  for (size_t g = 0; g + 1 < edges.size(); ++g) {
    mids.push_back(0.5 * (edges[g] + edges[g + 1]));
    empty.push_back(edges[g + 1] - edges[g] < tol);
    if (!empty[g] && edges[g + 1] - edges[g] > edges[widest + 1] - edges[widest]) widest = g;
  }
  std::vector<int> sig(mids.size(), 0);
  sig[widest] = sign_certified(hat(mids[widest]).imag(), scale);
  for (size_t g = widest + 1; g < sig.size(); ++g)
    sig[g] = (cross[g - 1].second % 2) ? -sig[g - 1] : sig[g - 1];
  for (size_t g = widest; g-- > 0;) sig[g] = (cross[g].second % 2) ? -sig[g + 1] : sig[g + 1];
  for (size_t g = 0; g < sig.size(); ++g)
    if (!empty[g] && hat(mids[g]).imag() * sig[g] < 0)
      throw IndeterminateError("inconsistent sign pattern along the arc");
  auto level = [](int s, int sigma) { return s == 1 ? 0.0 : 0.5 * sigma; };
  double var = 0.0;
  if (!empty.front()) var += level(signs[0], sig[0]) - std::arg(hat(lo)) / (2 * kPi);
  for (size_t i = 0; i + 1 < n; ++i) var += 0.25 * sig[i + 1] * (signs[i] - signs[i + 1]);
  if (!empty.back()) var += std::arg(hat(hi)) / (2 * kPi) - level(signs[n - 1], sig[n]);
  return round_twelfth(frac(k, 12).get_d() - var);
}

// real-axis crossings of a depth-1 hat: the full-arc zeros of f1
std::vector<std::pair<double, int>> depth1_crossings(const PowerSeries& f1, long k1,
                                                     const ScanConfig& scfg,
                                                     const EvalConfig& cfg) {
  std::vector<std::pair<double, int>> cross;
  for (const auto& z : arc_zeros(f1, k1, scfg, cfg)) {
    cross.push_back({z.theta, z.multiplicity});
    if (z.theta > kPi / 2 + 1e-9) cross.push_back({kPi - z.theta, z.multiplicity});
  }
  return cross;
}

// trailing terms shared by the inner-class count and the outer pair sum:
// r * sum_{j=0}^m ((-1)^j / w(z_j)) sgn f(z_j) + (1/2)(-1)^{m+1} r s
Rational line_tail(const BoundarySpectrum& sp) {
  long m = static_cast<long>(sp.line.size());
  Rational sum = frac(1, 2) * sp.sign_at_rho;  // j = 0 at rho, w = 2
  for (long j = 1; j <= m; ++j) sum += Rational((j % 2) ? -1 : 1) * sp.signs_line[j - 1];
  return Rational(sp.r) * sum + frac((m % 2) ? 1 : -1, 2) * sp.r * sp.s;
}

}  // namespace

Rational n_depth1(const QuasiModularForm& f, LambdaClass cls, const ScanConfig& scfg,
                  const EvalConfig& cfg) {
  if (!is_irreducible_depth1(f)) throw PreconditionError("form is not irreducible");
  long k = f.weight;
  BoundarySpectrum sp = spectrum(f, scfg, cfg);
  CompiledForm cf = CompiledForm::compile(f);
  auto hat = [&](double th) {
    return std::exp(Cx(0.0, 0.5 * k * th)) * cf.eval_fast(Cx(std::cos(th), std::sin(th)));
  };
  std::vector<std::pair<double, int>> cross;
  for (const auto& z : sp.arc) {
    cross.push_back({z.theta, z.multiplicity});
    if (z.theta > kPi / 2 + 1e-9) cross.push_back({kPi - z.theta, z.multiplicity});
  }
  Rational outer = band_count(hat, cross, k);
  switch (cls.kind) {
    case LambdaClass::outer:
      return outer;
    case LambdaClass::mid:
      return Rational(floor_long(k, 6)) - outer;
    default:
      return Rational(ceil_long(k, 6)) - outer - line_tail(sp);
  }
}

Rational n_infinity_depth1(const QuasiModularForm& f, const ScanConfig& scfg,
                           const EvalConfig& cfg) {
  if (!is_irreducible_depth1(f)) throw PreconditionError("form is not irreducible");
  long k = f.weight;
  CompiledForm cf = CompiledForm::compile(f);
  auto hat = [&](double th) {
    return std::exp(Cx(0.0, 0.5 * k * th)) * cf.eval_fast(Cx(std::cos(th), std::sin(th)));
  };
  return band_count(hat, depth1_crossings(f.components[1], k - 2, scfg, cfg), k);
}

// For F = f0 + fj the imaginary part of F-hat is fj-hat(theta) sin(j theta),
// so its zeros are known exactly: the arc zeros of fj together with the
// rational angles pi*m/j.
Rational n_mixed(const PowerSeries& f0, long k, const PowerSeries& fj, int j,
                 const ScanConfig& scfg, const EvalConfig& cfg) {
  if (j < 1) throw DomainError("mixed count needs a positive weight gap");
  long kj = k - 2 * j;
  CompiledForm c0 = CompiledForm::compile(qm_modular(f0, k));
  CompiledForm cj = CompiledForm::compile(qm_modular(fj, kj));
  auto hat = [&](double th) {
    Cx tau(std::cos(th), std::sin(th));
    return std::exp(Cx(0.0, 0.5 * k * th)) * (c0.eval_fast(tau) + cj.eval_fast(tau));
  };
  std::vector<std::pair<double, int>> cross = depth1_crossings(fj, kj, scfg, cfg);
  for (long m = (j + 2) / 3; 3 * m <= 2 * j; ++m) {
    double th = kPi * m / j;
    bool merged = false;
    for (auto& c : cross)
      if (std::abs(c.first - th) < 1e-9) {
        ++c.second;
        merged = true;
      }
    if (!merged) cross.push_back({th, 1});
  }
  return band_count(hat, cross, k);
}

Rational pair_sum(const QuasiModularForm& f, PairRegime regime, const ScanConfig& scfg,
                  const EvalConfig& cfg) {
  if (!is_irreducible_depth1(f)) throw PreconditionError("form is not irreducible");
  long k = f.weight;
  if (regime == PairRegime::mid) return Rational(floor_long(k, 6));
  BoundarySpectrum sp = spectrum(f, scfg, cfg);
  return Rational(ceil_long(k, 6)) - line_tail(sp);
}

Rational known_tables(KnownTable name, long k, LambdaClass cls) {
  if (name == KnownTable::E2) return cls.kind == LambdaClass::inner ? 1 : 0;
  if (k <= 2 || k % 2) throw DomainError("table defined for even weights above 2");
  Rational delta = (k % 6 == 2) ? frac(1, 3) : Rational(0);
  if (cls.kind == LambdaClass::outer) return Rational(floor_long(k + 2, 6)) + delta;
  return delta;
}

std::pair<long, long> upper_bound(long k) {
  long d = dim_qm_space(k, 1);
  return {d - 1, d};
}

std::pair<long, long> chebyshev_counts(long n) {
  if (n < 1) throw DomainError("chebyshev_counts needs n >= 1");
  long re = n - 2 * floor_long(2 * n + 3, 6);  // floor(n/3 + 1/2)
  long im = n - 1 - 2 * floor_long(n, 3);
  return {re, im};
}

}  // namespace qmz
