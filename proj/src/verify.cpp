#include "qmz/verify.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "qmz/counting.hpp"
#include "qmz/equivariant.hpp"
#include "qmz/formulas.hpp"

namespace qmz {

namespace {

using Checks = std::vector<CheckResult>;
const double kPi = 4.0 * std::atan(1.0);

template <class Fn>
void check(Checks& out, const std::string& name, Fn&& fn) {
  try {
    auto [pass, detail] = fn();
    out.push_back({name, pass, detail});
  } catch (const std::exception& e) {
    out.push_back({name, false, std::string("exception: ") + e.what()});
  }
}

std::pair<bool, std::string> expect_rat(const Rational& got, const Rational& want) {
  if (got == want) return {true, ""};
  return {false, "got " + rat_str(got) + ", expected " + rat_str(want)};
}

std::pair<bool, std::string> expect_near(double got, double want, double tol) {
  if (std::abs(got - want) <= tol) return {true, ""};
  std::ostringstream os;
  os << "got " << got << ", expected " << want << " within " << tol;
  return {false, os.str()};
}

std::string lam_str(const Lambda& l) { return l.infinite ? "inf" : rat_str(l.value); }

QuasiModularForm eis_qm(long k, int order) {
  return qm_modular(eisenstein_general(k, order), k);
}

// random element of the weight-k space of modular forms, small integer
// coordinates in the E4^a E6^b monomial basis
PowerSeries random_modular(long k, std::mt19937& rng, int n) {
  PowerSeries e4 = eisenstein(4, n), e6 = eisenstein(6, n);
  std::uniform_int_distribution<int> coef(-5, 5);
  while (true) {
    PowerSeries sum = PowerSeries::zero(n);
    bool nz = false;
    for (long b = 0; 6 * b <= k; ++b) {
      if ((k - 6 * b) % 4) continue;
      long a = (k - 6 * b) / 4;
      int c = coef(rng);
      if (c == 0) continue;
      sum = sum + (e4.pow(static_cast<int>(a)) * e6.pow(static_cast<int>(b))).scaled(c);
      nz = true;
    }
    if (nz) return sum;
  }
}

// fixed corpus of irreducible depth-1 forms of weight <= 36
const std::vector<QuasiModularForm>& depth1_corpus() {
  static const std::vector<QuasiModularForm> corpus = [] {
    std::vector<QuasiModularForm> cand;
    cand.push_back(qm_e2(default_order(2)));
    for (long k : {4, 6, 10, 14}) cand.push_back(d_form(eis_qm(k, default_order(k + 2))));
    {
      int n = default_order(12);
      cand.push_back(d_form(qm_modular(eisenstein(4, n) * eisenstein(6, n), 10)));
    }
    for (long k : {6, 12, 18}) cand.push_back(extremal_form(k));
    cand.push_back(gap_form(36));
    for (long k : {8, 14, 20, 24, 26}) {
      int n = default_order(k);
      cand.push_back(qm_add(eis_qm(k, n), qm_mul(eis_qm(k - 2, n), qm_e2(n))));
    }
    {
      int n = default_order(14);
      cand.push_back(qm_add(eis_qm(14, n), qm_mul(qm_modular(delta(n), 12), qm_e2(n))));
    }
    std::vector<QuasiModularForm> out;
    for (const auto& f : cand)
      if (is_irreducible_depth1(f)) out.push_back(f);
    return out;
  }();
  return corpus;
}

void suite_valence(Checks& out) {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> half(2, 24);
  const std::vector<Lambda> lams = {Lambda::inf(), Lambda::finite(0),
                                    Lambda::finite(frac(2, 3)), Lambda::finite(3)};
  for (int i = 0; i < 20; ++i) {
    long k = 2 * half(rng);
    QuasiModularForm f = qm_modular(random_modular(k, rng, default_order(k)), k);
    for (const Lambda& l : lams)
      check(out, "valence #" + std::to_string(i) + " w" + std::to_string(k) + " lambda " +
                     lam_str(l),
            [&] { return expect_rat(count_zeros(f, l).n, frac(k, 12)); });
  }
}

void suite_e2(Checks& out) {
  QuasiModularForm f = qm_e2(default_order(2));
  const std::vector<std::pair<Lambda, Rational>> cases = {
      {Lambda::inf(), 0},           {Lambda::finite(3), 0}, {Lambda::finite(frac(3, 4)), 0},
      {Lambda::finite(frac(1, 5)), 1}, {Lambda::finite(0), 1}};
  for (const auto& [l, want] : cases)
    check(out, "E2 oracle lambda " + lam_str(l),
          [&] { return expect_rat(count_zeros(f, l).n, want); });
  const std::vector<std::pair<LambdaClass::Kind, Rational>> cls = {
      {LambdaClass::outer, 0}, {LambdaClass::mid, 0}, {LambdaClass::inner, 1}};
  for (const auto& [c, want] : cls)
    check(out, "E2 closed formula class " + std::to_string(static_cast<int>(c)),
          [&] { return expect_rat(n_depth1(f, c), want); });
}

void suite_critical_eisenstein(Checks& out) {
  for (long k = 4; k <= 16; k += 2) {
    int n = default_order(k + 2);
    PowerSeries ek = eisenstein_general(k, n);
    QuasiModularForm df = d_form(qm_modular(ek, k));
    const std::vector<std::pair<Lambda, LambdaClass::Kind>> reps = {
        {Lambda::inf(), LambdaClass::outer},
        {Lambda::finite(frac(2, 3)), LambdaClass::mid},
        {Lambda::finite(frac(1, 10)), LambdaClass::inner}};
    for (const auto& [l, c] : reps) {
      Rational got = count_zeros(df, l).n;
      std::string tag = "E" + std::to_string(k) + "' lambda " + lam_str(l);
      if (c != LambdaClass::mid)
        check(out, tag + " vs table",
              [&, got] { return expect_rat(got, known_tables(KnownTable::DEk, k, c)); });
      check(out, tag + " vs closed formula",
            [&, got, cc = c] { return expect_rat(got, n_crit(ek, k, cc)); });
    }
  }
}

void suite_critical_points(Checks& out) {
  std::mt19937 rng(777);
  std::vector<std::pair<std::string, std::pair<PowerSeries, long>>> gs;
  int n = default_order(38);
  PowerSeries e4 = eisenstein(4, n), e6 = eisenstein(6, n), dl = delta(n);
  gs.push_back({"Delta", {dl, 12}});
  gs.push_back({"E4", {e4, 4}});
  gs.push_back({"E6", {e6, 6}});
  gs.push_back({"E4*E6", {e4 * e6, 10}});
  gs.push_back({"Delta*E4", {dl * e4, 16}});
  gs.push_back({"Delta^2", {dl * dl, 24}});
  gs.push_back({"cuspidal w28", {dl * random_modular(16, rng, n), 28}});
  gs.push_back({"cuspidal w32", {dl * random_modular(20, rng, n), 32}});
  const std::vector<std::pair<Lambda, LambdaClass::Kind>> reps = {
      {Lambda::inf(), LambdaClass::outer},
      {Lambda::finite(frac(2, 3)), LambdaClass::mid},
      {Lambda::finite(frac(1, 10)), LambdaClass::inner}};
  for (const auto& [name, gk] : gs) {
    QuasiModularForm df = d_form(qm_modular(gk.first, gk.second));
    for (const auto& [l, c] : reps)
      check(out, "critical points of " + name + " lambda " + lam_str(l), [&, cc = c] {
        return expect_rat(count_zeros(df, l).n, n_crit(gk.first, gk.second, cc));
      });
  }
}

void suite_depth1(Checks& out) {
  const auto& corpus = depth1_corpus();
  check(out, "corpus size >= 15", [&]() -> std::pair<bool, std::string> {
    return {corpus.size() >= 15, "corpus has " + std::to_string(corpus.size()) + " forms"};
  });
  const std::vector<std::pair<Lambda, LambdaClass::Kind>> reps = {
      {Lambda::inf(), LambdaClass::outer},
      {Lambda::finite(frac(3, 4)), LambdaClass::mid},
      {Lambda::finite(frac(1, 5)), LambdaClass::inner}};
  for (size_t i = 0; i < corpus.size(); ++i) {
    const QuasiModularForm& f = corpus[i];
    std::string tag = "corpus #" + std::to_string(i) + " w" + std::to_string(f.weight);
    for (const auto& [l, c] : reps)
      check(out, tag + " lambda " + lam_str(l), [&, cc = c] {
        return expect_rat(n_depth1(f, cc), count_zeros(f, l).n);
      });
  }
  QuasiModularForm g = gap_form(36);
  check(out, "gap form triple (1,5,6)", [&]() -> std::pair<bool, std::string> {
    Rational a = n_depth1(g, LambdaClass::outer), b = n_depth1(g, LambdaClass::mid),
             c = n_depth1(g, LambdaClass::inner);
    bool ok = a == 1 && b == 5 && c == 6;
    return {ok, "got (" + rat_str(a) + "," + rat_str(b) + "," + rat_str(c) + ")"};
  });
}

void suite_gap_coefficients(Checks& out) {
  check(out, "gap form a7 a8 a9", []() -> std::pair<bool, std::string> {
    PowerSeries s = gap_form(36).expand();
    const char* want[3] = {"212963830173619200", "45122255555990230800",
                           "3920264199663225523200"};
    for (int i = 0; i < 3; ++i)
      if (s.at(7 + i) != rat_parse(want[i]))
        return {false, "a" + std::to_string(7 + i) + " = " + rat_str(s.at(7 + i))};
    return {true, ""};
  });
}

void suite_j_locations(Checks& out) {
  QuasiModularForm g = gap_form(36);
  auto roots_of = [](const PowerSeries& s, long k) {
    std::vector<double> re;
    for (Cx r : polynomial_roots(j_polynomial(s, k))) re.push_back(r.real());
    std::sort(re.begin(), re.end());
    return re;
  };
  check(out, "top component zeros in j", [&]() -> std::pair<bool, std::string> {
    std::vector<double> r = roots_of(g.components[1], 34);
    const double want[2] = {198.3495, 1082.4083};
    if (r.size() != 2) return {false, "expected 2 roots, got " + std::to_string(r.size())};
    for (int i = 0; i < 2; ++i)
      if (std::abs(r[i] - want[i]) > 1e-3) return expect_near(r[i], want[i], 1e-3);
    return {true, ""};
  });
  check(out, "bottom component zeros in j", [&]() -> std::pair<bool, std::string> {
    std::vector<double> r = roots_of(g.components[0], 36);
    const double want[3] = {-36.7451, 482.1402, 1526.3776};
    if (r.size() != 3) return {false, "expected 3 roots, got " + std::to_string(r.size())};
    for (int i = 0; i < 3; ++i)
      if (std::abs(r[i] - want[i]) > 1e-3) return expect_near(r[i], want[i], 1e-3);
    return {true, ""};
  });
}

void suite_thresholds(Checks& out) {
  check(out, "threshold v", [] { return expect_near(find_threshold("v"), 5.555295, 1e-3); });
  check(out, "threshold 1/v",
        [] { return expect_near(find_threshold("v_inv"), 0.180008, 1e-3); });
  check(out, "threshold t1", [] { return expect_near(find_threshold("t1"), 1.596, 1e-3); });
}

void suite_higher_depth(Checks& out) {
  int n = default_order(4);
  QuasiModularForm f = qm_sub(qm_mul(qm_e2(n), qm_e2(n)), eis_qm(4, n));
  const std::vector<std::pair<Lambda, Rational>> cases = {{Lambda::inf(), 1},
                                                          {Lambda::finite(6), 1},
                                                          {Lambda::finite(2), 0},
                                                          {Lambda::finite(frac(3, 10)), 1},
                                                          {Lambda::finite(frac(1, 10)), 0}};
  for (const auto& [l, want] : cases)
    check(out, "E2^2-E4 lambda " + lam_str(l),
          [&] { return expect_rat(count_zeros(f, l).n, want); });
  const std::vector<std::pair<Rational, Rational>> pencil = {
      {-1, 0}, {frac(1, 2), 1}, {2, 0}};
  for (const auto& [t, want] : pencil) {
    QuasiModularForm ft =
        qm_sub(eis_qm(4, n), qm_scale(qm_mul(qm_e2(n), qm_e2(n)), t));
    check(out, "E4 - (" + rat_str(t) + ") E2^2 at infinity",
          [&] { return expect_rat(count_zeros_series(ft.expand()), want); });
  }
}

void suite_gamma02(Checks& out) {
  int n = default_order(4);
  QuasiModularForm f = qm_sub(qm_mul(qm_e2(n), qm_e2(n)), eis_qm(4, n));
  const std::vector<Gamma2> gs = {{1, 0, 2, 1}, {1, 1, 2, 3}, {1, 2, 2, 5}};
  for (const Gamma2& g : gs)
    check(out,
          "level 2 count at (" + std::to_string(g.a) + "," + std::to_string(g.b) + "," +
              std::to_string(g.c) + "," + std::to_string(g.d) + ")",
          [&] { return expect_rat(count_zeros_gamma02(f, g), 1); });
}

void suite_pair_sum(Checks& out) {
  const auto& corpus = depth1_corpus();
  const std::vector<Rational> mids = {frac(3, 4), frac(3, 2)};
  const std::vector<Rational> outers = {3, frac(1, 5)};
  for (size_t i = 0; i < corpus.size(); ++i) {
    const QuasiModularForm& f = corpus[i];
    std::string tag = "corpus #" + std::to_string(i) + " w" + std::to_string(f.weight);
    for (const Rational& l : mids)
      check(out, tag + " mid pair at " + rat_str(l), [&] {
        Rational s = count_zeros(f, Lambda::finite(l)).n +
                     count_zeros(f, Lambda::finite(Rational(-1) / l)).n;
        return expect_rat(s, pair_sum(f, PairRegime::mid));
      });
    for (const Rational& l : outers)
      check(out, tag + " outer pair at " + rat_str(l), [&] {
        Rational s = count_zeros(f, Lambda::finite(l)).n +
                     count_zeros(f, Lambda::finite(Rational(-1) / l)).n;
        return expect_rat(s, pair_sum(f, PairRegime::outer));
      });
  }
}

void suite_appendix(Checks& out) {
  // sign-scan zero counts of Re/Im of the arc normalization of E2^n
  CompiledForm cf = CompiledForm::compile(qm_e2(48));
  int samples = 3000;
  std::vector<Cx> base(samples - 1);
  for (int i = 1; i < samples; ++i) {
    double th = kPi / 3 + (kPi / 3) * i / samples;
    Cx z(std::cos(th), std::sin(th));
    base[i - 1] = std::exp(Cx(0.0, th)) * cf.eval_fast(z);
  }
  auto changes = [](const std::vector<double>& v) {
    long c = 0;
    int last = 0;
    for (double x : v) {
      int s = x > 0 ? 1 : (x < 0 ? -1 : 0);
      if (s == 0) continue;
      if (last != 0 && s != last) ++c;
      last = s;
    }
    return c;
  };
  for (long m = 1; m <= 20; ++m) {
    check(out, "powers n=" + std::to_string(m), [&]() -> std::pair<bool, std::string> {
      std::vector<double> re, im;
      for (const Cx& b : base) {
        Cx p = std::pow(b, static_cast<double>(m));
        re.push_back(p.real());
        im.push_back(p.imag());
      }
      auto [wre, wim] = chebyshev_counts(m);
      long cre = changes(re), cim = changes(im);
      bool ok = cre == wre && cim == wim;
      return {ok, "scan (" + std::to_string(cre) + "," + std::to_string(cim) + ") vs (" +
                      std::to_string(wre) + "," + std::to_string(wim) + ")"};
    });
  }
  std::mt19937 rng(2024);
  for (int p = 2; p <= 6; ++p) {
    int n = default_order(2 * p);
    QuasiModularForm f = qm_add(qm_modular(random_modular(2 * p, rng, n), 2 * p),
                                qm_pow(qm_e2(n), p));
    check(out, "monic bound p=" + std::to_string(p), [&]() -> std::pair<bool, std::string> {
      Rational got = count_zeros(f, Lambda::inf()).n;
      bool ok = got <= frac(p + 1, 3);
      return {ok, "count " + rat_str(got) + " vs bound " + rat_str(frac(p + 1, 3))};
    });
  }
}

void suite_equivariance(Checks& out) {
  QuasiModularForm e2 = qm_e2(64);
  Cx tau(0.23, 1.13);
  check(out, "equivariance under inversion", [&] {
    Cx lhs = h_depth1(e2, -1.0 / tau);
    Cx rhs = -1.0 / h_depth1(e2, tau);
    return expect_near(std::abs(lhs - rhs), 0.0, 1e-8);
  });
  check(out, "equivariance under translation", [&] {
    Cx lhs = h_depth1(e2, tau + 1.0);
    Cx rhs = h_depth1(e2, tau) + 1.0;
    return expect_near(std::abs(lhs - rhs), 0.0, 1e-8);
  });
  for (double th : {1.2, 1.7, 2.0})
    check(out, "unit circle preserved at theta " + std::to_string(th), [&] {
      Cx h = h_depth1(e2, Cx(std::cos(th), std::sin(th)));
      return expect_near(std::abs(h), 1.0, 1e-9);
    });
  for (const auto& [name, f] :
       {std::pair<std::string, QuasiModularForm>{"E2", e2},
        {"E4'", d_form(eis_qm(4, 64))}}) {
    check(out, "derivative identity for " + name, [&, ff = f] {
      long k = ff.weight;
      PowerSeries f0 = ff.components[0], f1 = ff.components[1];
      PowerSeries t1 = serre_theta(qm_modular(f1, k - 2)).components[0];
      PowerSeries t0 = f0.is_zero() ? PowerSeries::zero(f1.order())
                                    : serre_theta(qm_modular(f0, k)).components[0];
      PowerSeries rhs = f0 * f0 + (f0 * t1).scaled(12) - (t0 * f1).scaled(12) +
                        f1 * f1 * eisenstein(4, f1.order());
      Cx tau0(0.13, 1.05);
      double step = 1e-5;
      Cx hp = (h_depth1(ff, tau0 + step) - h_depth1(ff, tau0 - step)) / (2.0 * step);
      Cx lhs = hp * std::pow(eval_qm(ff, tau0), 2.0);
      Cx want = eval_qm(qm_modular(rhs, 2 * k), tau0);
      return expect_near(std::abs(lhs - want) / std::abs(want), 0.0, 1e-6);
    });
  }
  check(out, "branch product law", [&] {
    int n = 64;
    QuasiModularForm f = qm_sub(qm_mul(qm_e2(n), qm_e2(n)), eis_qm(4, n));
    Cx tau0(0.17, 1.23);
    Cx lambda(2.0, 0.0);
    Cx lhs = 1.0;
    for (Cx h : h_roots(f, tau0)) lhs *= (h - lambda);
    Cx rhs = std::pow(tau0 - lambda, 2.0) * target_function(f, Lambda::finite(2), tau0) /
             eval_qm(f, tau0);
    return expect_near(std::abs(lhs - rhs) / std::abs(rhs), 0.0, 1e-8);
  });
  auto qm_eq = [](const QuasiModularForm& a, const QuasiModularForm& b) {
    size_t p = std::max(a.components.size(), b.components.size());
    for (size_t j = 0; j < p; ++j) {
      if (j >= a.components.size()) {
        if (!b.components[j].is_zero()) return false;
      } else if (j >= b.components.size()) {
        if (!a.components[j].is_zero()) return false;
      } else if (!a.components[j].same_prefix(b.components[j])) {
        return false;
      }
    }
    return true;
  };
  for (const auto& [name, f] :
       {std::pair<std::string, QuasiModularForm>{"E2*E4", qm_mul(qm_e2(40), eis_qm(4, 40))},
        {"E2^2", qm_mul(qm_e2(40), qm_e2(40))}}) {
    check(out, "weight commutator with D on " + name, [&, ff = f]() {
      QuasiModularForm lhs = qm_sub(w_operator(d_form(ff)), d_form(w_operator(ff)));
      bool ok = qm_eq(lhs, qm_scale(d_form(ff), 2));
      return std::pair<bool, std::string>{ok, ok ? "" : "commutator mismatch"};
    });
    check(out, "weight commutator with lowering on " + name, [&, ff = f]() {
      QuasiModularForm lhs = qm_sub(w_operator(frak_d(ff)), frak_d(w_operator(ff)));
      bool ok = qm_eq(lhs, qm_scale(frak_d(ff), -2));
      return std::pair<bool, std::string>{ok, ok ? "" : "commutator mismatch"};
    });
  }
}

void suite_extremal(Checks& out) {
  for (long k : {6, 12, 18}) {
    QuasiModularForm f = extremal_form(k);
    std::string tag = "extremal w" + std::to_string(k);
    check(out, tag + " differential equation", [&]() -> std::pair<bool, std::string> {
      int n = f.order();
      QuasiModularForm e2 = qm_e2(n);
      QuasiModularForm res = qm_sub(
          qm_sub(d_form(d_form(f)), qm_scale(qm_mul(e2, d_form(f)), frac(k, 6))),
          qm_scale(qm_mul(d_form(e2), f), frac(-k * (k - 1), 12)));
      bool ok = res.expand().truncate(n - 2).is_zero();
      return {ok, ok ? "" : "nonzero residual"};
    });
    check(out, tag + " count at infinity",
          [&] { return expect_rat(count_zeros(f, Lambda::inf()).n, floor_long(k, 6)); });
    check(out, tag + " top component lives on the circle",
          [&]() -> std::pair<bool, std::string> {
            const PowerSeries& f1 = f.components[1];
            if (v_infinity(f1) != 0) return {false, "top component vanishes at the cusp"};
            if (!line_zeros(f1, k - 2).empty()) return {false, "zero on the vertical line"};
            Rational total = 0;
            for (const ArcZero& z : arc_zeros(f1, k - 2)) total += z.weight * z.multiplicity;
            return expect_rat(total, frac(k - 2, 12));
          });
  }
}

using SuiteFn = void (*)(Checks&);

const std::vector<std::pair<std::string, SuiteFn>>& suites() {
  static const std::vector<std::pair<std::string, SuiteFn>> table = {
      {"valence", suite_valence},
      {"e2-zeros", suite_e2},
      {"critical-eisenstein", suite_critical_eisenstein},
      {"critical-points", suite_critical_points},
      {"depth1-theorem", suite_depth1},
      {"gap-coefficients", suite_gap_coefficients},
      {"j-locations", suite_j_locations},
      {"thresholds", suite_thresholds},
      {"higher-depth", suite_higher_depth},
      {"gamma02", suite_gamma02},
      {"pair-sum", suite_pair_sum},
      {"appendix", suite_appendix},
      {"equivariance", suite_equivariance},
      {"extremal", suite_extremal},
  };
  return table;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& [n, fn] : suites()) names.push_back(n);
  return names;
}

std::vector<CheckResult> run_suite(const std::string& name) {
  Checks out;
  if (name == "all") {
    for (const auto& [n, fn] : suites()) {
      Checks sub;
      fn(sub);
      for (auto& c : sub) c.name = n + ": " + c.name;
      out.insert(out.end(), sub.begin(), sub.end());
    }
    return out;
  }
  for (const auto& [n, fn] : suites())
    if (n == name) {
      fn(out);
      return out;
    }
  throw NotFoundError("unknown suite: " + name);
}

}  // namespace qmz
