#include "qmz/forms.hpp"

#include <algorithm>

#include <Eigen/Eigenvalues>
#include <nlohmann/json.hpp>

namespace qmz {

namespace {

Rational binom(unsigned long n, unsigned long k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Rational(b);
}

Rational pow_rat(const Rational& b, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// divisor power sum sigma_{e}(n)
mpz_class sigma(int e, int n) {
  mpz_class s = 0, t;
  for (int d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    mpz_ui_pow_ui(t.get_mpz_t(), d, e);
    s += t;
    int q = n / d;
    if (q != d) {
      mpz_ui_pow_ui(t.get_mpz_t(), q, e);
      s += t;
    }
  }
  return s;
}

std::vector<Rational> bernoulli(int n) {
  std::vector<Rational> b(n + 1);
  b[0] = 1;
  for (int m = 1; m <= n; ++m) {
    Rational acc = 0;
    for (int j = 0; j < m; ++j) acc += binom(m + 1, j) * b[j];
    b[m] = -acc / Rational(m + 1);
  }
  return b;
}

}  // namespace

QuasiModularForm::QuasiModularForm(long k, std::vector<PowerSeries> comps)
    : weight(k), components(std::move(comps)) {
  if (components.empty()) components.resize(1);
  while (components.size() > 1 && components.back().is_zero()) components.pop_back();
}

int QuasiModularForm::order() const {
  int n = components[0].order();
  for (const auto& c : components) n = std::min(n, c.order());
  return n;
}

bool QuasiModularForm::is_zero() const {
  for (const auto& c : components)
    if (!c.is_zero()) return false;
  return true;
}

PowerSeries QuasiModularForm::expand() const {
  PowerSeries e2 = eisenstein(2, order());
  PowerSeries acc = components[0].truncate(order());
  PowerSeries p = PowerSeries::constant(1, order());
  for (size_t j = 1; j < components.size(); ++j) {
    p = p * e2;
    acc = acc + components[j] * p;
  }
  return acc;
}

nlohmann::json QuasiModularForm::to_json() const {
  nlohmann::json j;
  j["weight"] = weight;
  j["depth"] = depth();
  auto& c = j["components"] = nlohmann::json::array();
  for (const auto& s : components) c.push_back(s.to_json());
  return j;
}

QuasiModularForm QuasiModularForm::from_json(const nlohmann::json& j) {
  std::vector<PowerSeries> comps;
  for (const auto& c : j.at("components")) comps.push_back(PowerSeries::from_json(c));
  return QuasiModularForm(j.at("weight").get<long>(), std::move(comps));
}

PowerSeries eisenstein(int k, int order) {
  if (k != 2 && k != 4 && k != 6) throw DomainError("eisenstein: k must be 2, 4 or 6");
  long c = k == 2 ? -24 : (k == 4 ? 240 : -504);
  std::vector<Rational> v(order + 1);
  v[0] = 1;
  for (int n = 1; n <= order; ++n) v[n] = Rational(c) * Rational(sigma(k - 1, n));
  return PowerSeries::exact(std::move(v));
}

PowerSeries eisenstein_general(long k, int order) {
  if (k < 2 || k % 2) throw DomainError("eisenstein_general: k must be even and >= 2");
  Rational factor = Rational(-2 * k) / bernoulli(static_cast<int>(k))[k];
  std::vector<Rational> v(order + 1);
  v[0] = 1;
  for (int n = 1; n <= order; ++n) v[n] = factor * Rational(sigma(static_cast<int>(k - 1), n));
  return PowerSeries::exact(std::move(v));
}

PowerSeries delta(int order) {
  if (order < 1) throw DomainError("delta: order must be >= 1");
  PowerSeries e4 = eisenstein(4, order), e6 = eisenstein(6, order);
  return (e4.pow(3) - e6.pow(2)).scaled(Rational(1, 1728));
}

PowerSeries j_times_q(int order) {
  PowerSeries e4 = eisenstein(4, order);
  return e4.pow(3) * delta(order + 1).shift_down(1).invert();
}

QuasiModularForm qm_modular(PowerSeries g, long k) {
  return QuasiModularForm(k, {std::move(g)});
}

QuasiModularForm qm_e2(int order) {
  return QuasiModularForm(2, {PowerSeries::zero(order), PowerSeries::constant(1, order)});
}

QuasiModularForm qm_add(const QuasiModularForm& a, const QuasiModularForm& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.weight != b.weight) throw DomainError("adding forms of different weights");
  std::vector<PowerSeries> comps;
  int n = std::min(a.order(), b.order());
  size_t p = std::max(a.components.size(), b.components.size());
  for (size_t j = 0; j < p; ++j) {
    PowerSeries s = PowerSeries::zero(n);
    if (j < a.components.size()) s = s + a.components[j];
    if (j < b.components.size()) s = s + b.components[j];
    comps.push_back(std::move(s));
  }
  return QuasiModularForm(a.weight, std::move(comps));
}

QuasiModularForm qm_scale(const QuasiModularForm& a, const Rational& c) {
  std::vector<PowerSeries> comps;
  for (const auto& s : a.components) comps.push_back(s.scaled(c));
  return QuasiModularForm(a.weight, std::move(comps));
}

QuasiModularForm qm_sub(const QuasiModularForm& a, const QuasiModularForm& b) {
  return qm_add(a, qm_scale(b, -1));
}

QuasiModularForm qm_mul(const QuasiModularForm& a, const QuasiModularForm& b) {
  if (a.is_zero() || b.is_zero()) return QuasiModularForm();
  int n = std::min(a.order(), b.order());
  std::vector<PowerSeries> comps(a.components.size() + b.components.size() - 1,
                                 PowerSeries::zero(n));
  for (size_t i = 0; i < a.components.size(); ++i)
    for (size_t j = 0; j < b.components.size(); ++j)
      comps[i + j] = comps[i + j] + a.components[i] * b.components[j];
  return QuasiModularForm(a.weight + b.weight, std::move(comps));
}

QuasiModularForm qm_pow(const QuasiModularForm& a, int e) {
  QuasiModularForm r = qm_modular(PowerSeries::constant(1, a.order()), 0);
  for (int i = 0; i < e; ++i) r = qm_mul(r, a);
  return r;
}

QuasiModularForm frak_d(const QuasiModularForm& f, int m) {
  if (m == 0) return f;
  int p = f.depth();
  if (m > p) return QuasiModularForm(f.weight - 2 * m, {PowerSeries::zero(f.order())});
  // 𝔡^m f = m! 12^m sum_j C(j, m) f_j E2^{j-m}
  Rational pre = pow_rat(12, m);
  for (int i = 2; i <= m; ++i) pre *= i;
  std::vector<PowerSeries> comps;
  for (int i = 0; i + m <= p; ++i)
    comps.push_back(f.components[i + m].scaled(pre * binom(i + m, m)));
  return QuasiModularForm(f.weight - 2 * m, std::move(comps));
}

QuasiModularForm serre_theta(const QuasiModularForm& g) {
  if (g.depth() != 0) throw DomainError("serre derivative needs a modular form");
  const PowerSeries& s = g.components[0];
  PowerSeries e2 = eisenstein(2, s.order());
  PowerSeries t = s.derivative_q() - (e2 * s).scaled(frac(g.weight, 12));
  return qm_modular(std::move(t), g.weight + 2);
}

QuasiModularForm d_form(const QuasiModularForm& f) {
  long k = f.weight;
  int p = f.depth(), n = f.order();
  PowerSeries e2 = eisenstein(2, n), e4 = eisenstein(4, n);
  std::vector<PowerSeries> comps;
  for (int i = 0; i <= p + 1; ++i) {
    PowerSeries c = PowerSeries::zero(n);
    if (i <= p) {
      const PowerSeries& fi = f.components[i];
      c = c + fi.derivative_q() - (e2 * fi).scaled(frac(k - 2 * i, 12));
    }
    if (i >= 1) c = c + f.components[i - 1].scaled(frac(k - (i - 1), 12));
    if (i + 1 <= p) c = c - (e4 * f.components[i + 1]).scaled(frac(i + 1, 12));
    comps.push_back(std::move(c));
  }
  return QuasiModularForm(k + 2, std::move(comps));
}

QuasiModularForm w_operator(const QuasiModularForm& f) {
  return qm_sub(frak_d(d_form(f)), d_form(frak_d(f)));
}

FormSpaceBasis basis(long k, int p, int order) {
  if (k < 0 || k % 2) throw DomainError("basis: weight must be even and >= 0");
  FormSpaceBasis fb;
  fb.weight = k;
  fb.max_depth = p;
  PowerSeries e4 = eisenstein(4, order), e6 = eisenstein(6, order);
  for (int c = 0; c <= p && 2 * c <= k; ++c) {
    for (long a = 0; 4 * a + 2 * c <= k; ++a) {
      long rest = k - 4 * a - 2 * c;
      if (rest % 6) continue;
      long b = rest / 6;
      PowerSeries mono = e4.pow(static_cast<int>(a)) * e6.pow(static_cast<int>(b));
      std::vector<PowerSeries> comps(c + 1, PowerSeries::zero(order));
      comps[c] = std::move(mono);
      fb.elements.emplace_back(k, std::move(comps));
    }
  }
  return fb;
}

long dim_qm_space(long k, int p) {
  long d = 0;
  for (int c = 0; c <= p && 2 * c <= k; ++c)
    for (long a = 0; 4 * a + 2 * c <= k; ++a)
      if ((k - 4 * a - 2 * c) % 6 == 0) ++d;
  return d;
}

std::optional<std::vector<Rational>> solve_exact(Mat a, std::vector<Rational> b) {
  size_t n = a.size();
  if (n == 0 || a[0].size() != n || b.size() != n) throw DomainError("solve_exact: not square");
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && sgn(a[piv][col]) == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (size_t r = 0; r < n; ++r) {
      if (r == col || sgn(a[r][col]) == 0) continue;
      Rational m = a[r][col] / a[col][col];
      for (size_t c = col; c < n; ++c) a[r][c] -= m * a[col][c];
      b[r] -= m * b[col];
    }
  }
  std::vector<Rational> x(n);
  for (size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

std::optional<std::vector<Rational>> in_modular_span(const PowerSeries& s, long k) {
  if (k < 0 || k % 2) return std::nullopt;
  if (s.is_zero()) return std::vector<Rational>(dim_qm_space(k, 0));
  FormSpaceBasis fb = basis(k, 0, s.order());
  size_t d = fb.elements.size();
  if (d == 0) return std::nullopt;
  Mat a(d, std::vector<Rational>(d));
  std::vector<Rational> rhs(d);
  for (size_t i = 0; i < d; ++i) {
    rhs[i] = s.at(static_cast<int>(i));
    for (size_t j = 0; j < d; ++j) a[i][j] = fb.elements[j].components[0].at(static_cast<int>(i));
  }
  auto x = solve_exact(std::move(a), std::move(rhs));
  if (!x) return std::nullopt;
  PowerSeries rec = PowerSeries::zero(s.order());
  for (size_t j = 0; j < d; ++j) rec = rec + fb.elements[j].components[0].scaled((*x)[j]);
  if (!rec.same_prefix(s)) return std::nullopt;
  return x;
}

int v_infinity(const PowerSeries& g) { return g.first_nonzero(); }

namespace {
int divisibility_order(const PowerSeries& g, long k, const PowerSeries& div, long div_weight) {
  int v = 0;
  PowerSeries cur = g;
  PowerSeries inv = div.truncate(g.order()).invert();
  long kk = k;
  while (kk - div_weight >= 0) {
    PowerSeries t = cur * inv;
    if (!in_modular_span(t, kk - div_weight)) break;
    cur = std::move(t);
    kk -= div_weight;
    ++v;
  }
  return v;
}
}  // namespace

int v_rho_exact(const PowerSeries& g, long k) {
  if (g.is_zero()) throw DomainError("v_rho of the zero form");
  int v = divisibility_order(g, k, eisenstein(4, g.order()), 4);
  if ((v - k) % 3 != 0) throw Error("v_rho violates the weight congruence");
  return v;
}

int v_i_exact(const PowerSeries& g, long k) {
  if (g.is_zero()) throw DomainError("v_i of the zero form");
  int v = divisibility_order(g, k, eisenstein(6, g.order()), 6);
  if ((v - k / 2) % 2 != 0) throw Error("v_i violates the weight congruence");
  return v;
}

std::vector<Rational> j_polynomial(const PowerSeries& g, long k) {
  int d = v_infinity(g);
  if (d < 0) throw DomainError("j_polynomial of the zero form");
  int a = v_rho_exact(g, k), b = v_i_exact(g, k);
  int n = g.order();
  PowerSeries dq_inv = delta(n + 1).shift_down(1).invert();  // q/Delta
  PowerSeries m = g.shift_down(d) * dq_inv.pow(d);
  if (a) m = m * eisenstein(4, n).invert().pow(a);
  if (b) m = m * eisenstein(6, n).invert().pow(b);
  long kp = k - 12L * d - 4L * a - 6L * b;
  if (kp < 0 || kp % 12) throw Error("j_polynomial: residual weight not divisible by 12");
  int e = static_cast<int>(kp / 12);
  PowerSeries target = m * dq_inv.pow(e);  // q^e P(j)
  PowerSeries qj = j_times_q(n);
  std::vector<PowerSeries> bs;
  for (int i = 0; i <= e; ++i) bs.push_back(qj.pow(i).shift_up(e - i));
  Mat mat(e + 1, std::vector<Rational>(e + 1));
  std::vector<Rational> rhs(e + 1);
  for (int r = 0; r <= e; ++r) {
    rhs[r] = target.at(r);
    for (int c = 0; c <= e; ++c) mat[r][c] = bs[c].at(r);
  }
  auto x = solve_exact(std::move(mat), std::move(rhs));
  if (!x) throw Error("j_polynomial: singular system");
  PowerSeries rec = PowerSeries::zero(n);
  for (int i = 0; i <= e; ++i) rec = rec + bs[i].scaled((*x)[i]);
  int check = std::min(target.order(), rec.order()) - 2;
  if (!rec.truncate(check).same_prefix(target.truncate(check)))
    throw Error("j_polynomial: reconstruction mismatch");
  return *x;
}

Rational resultant(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  int m = static_cast<int>(a.size()) - 1, n = static_cast<int>(b.size()) - 1;
  while (m >= 0 && sgn(a[m]) == 0) --m;
  while (n >= 0 && sgn(b[n]) == 0) --n;
  if (m < 0 || n < 0) return 0;
  if (m == 0 && n == 0) return 1;
  int size = m + n;
  Mat s(size, std::vector<Rational>(size));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c <= m; ++c) s[r][r + c] = a[m - c];
  for (int r = 0; r < m; ++r)
    for (int c = 0; c <= n; ++c) s[n + r][r + c] = b[n - c];
  // determinant by elimination
  Rational det = 1;
  for (int col = 0; col < size; ++col) {
    int piv = col;
    while (piv < size && sgn(s[piv][col]) == 0) ++piv;
    if (piv == size) return 0;
    if (piv != col) {
      std::swap(s[piv], s[col]);
      det = -det;
    }
    det *= s[col][col];
    for (int r = col + 1; r < size; ++r) {
      if (sgn(s[r][col]) == 0) continue;
      Rational f = s[r][col] / s[col][col];
      for (int c = col; c < size; ++c) s[r][c] -= f * s[col][c];
    }
  }
  return det;
}

std::vector<Cx> polynomial_roots(const std::vector<Rational>& p) {
  int deg = static_cast<int>(p.size()) - 1;
  while (deg > 0 && sgn(p[deg]) == 0) --deg;
  if (deg <= 0) return {};
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
  double lead = p[deg].get_d();
  for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -p[i].get_d() / lead;
  for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp);
  std::vector<Cx> roots;
  for (int i = 0; i < deg; ++i) roots.push_back(es.eigenvalues()(i));
  return roots;
}

bool is_irreducible_depth1(const QuasiModularForm& f) {
  if (f.depth() != 1) throw DomainError("irreducibility check needs depth 1");
  const PowerSeries& f0 = f.components[0];
  const PowerSeries& f1 = f.components[1];
  if (f1.is_zero()) throw DomainError("depth-1 form with zero top component");
  if (f0.is_zero()) return f.weight == 2;  // f = c E2
  long k = f.weight;
  if (v_infinity(f0) > 0 && v_infinity(f1) > 0) return false;
  if (v_rho_exact(f0, k) > 0 && v_rho_exact(f1, k - 2) > 0) return false;
  if (v_i_exact(f0, k) > 0 && v_i_exact(f1, k - 2) > 0) return false;
  std::vector<Rational> p0 = j_polynomial(f0, k), p1 = j_polynomial(f1, k - 2);
  if (p0.size() > 1 && p1.size() > 1 && sgn(resultant(p0, p1)) == 0) return false;
  return true;
}

QuasiModularForm gap_form(long k) {
  FormSpaceBasis fb = basis(k, 1, default_order(k));
  size_t d = fb.elements.size();
  if (d == 0) throw Error("gap_form: empty space");
  std::vector<PowerSeries> exp;
  for (const auto& e : fb.elements) exp.push_back(e.expand());
  Mat a(d, std::vector<Rational>(d));
  std::vector<Rational> rhs(d);
  rhs[0] = 1;
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) a[i][j] = exp[j].at(static_cast<int>(i));
  auto x = solve_exact(std::move(a), std::move(rhs));
  if (!x) throw Error("gap_form: singular system, no unique gap form");
  QuasiModularForm f;
  for (size_t j = 0; j < d; ++j) f = qm_add(f, qm_scale(fb.elements[j], (*x)[j]));
  f.weight = k;
  return f;
}

QuasiModularForm extremal_form(long k) {
  if (k <= 0 || k % 6) throw DomainError("extremal_form: weight must be a positive multiple of 6");
  FormSpaceBasis fb = basis(k, 1, default_order(k));
  size_t d = fb.elements.size();
  std::vector<PowerSeries> exp;
  for (const auto& e : fb.elements) exp.push_back(e.expand());
  Mat a(d, std::vector<Rational>(d));
  std::vector<Rational> rhs(d);
  rhs[d - 1] = 1;
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) a[i][j] = exp[j].at(static_cast<int>(i));
  auto x = solve_exact(std::move(a), std::move(rhs));
  if (!x) throw Error("extremal_form: singular system");
  QuasiModularForm f;
  for (size_t j = 0; j < d; ++j) f = qm_add(f, qm_scale(fb.elements[j], (*x)[j]));
  f.weight = k;
  // Kaneko-Zagier equation: f'' - (k/6) E2 f' + (k(k-1)/12) E2' f = 0
  PowerSeries F = f.expand();
  int n = F.order();
  PowerSeries e2 = eisenstein(2, n);
  PowerSeries res = F.derivative_q().derivative_q() -
                    (e2 * F.derivative_q()).scaled(frac(k, 6)) +
                    (e2.derivative_q() * F).scaled(frac(k * (k - 1), 12));
  if (!res.is_zero()) throw Error("extremal_form: differential equation residual nonzero");
  return f;
}

}  // namespace qmz
