#include "qmz/series.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

namespace qmz {

PowerSeries PowerSeries::exact(std::vector<Rational> c) {
  PowerSeries s;
  if (c.empty()) c.resize(1);
  s.mode_ = Mode::exact;
  s.rat_ = std::move(c);
  return s;
}

PowerSeries PowerSeries::floating(std::vector<Cx> c) {
  PowerSeries s;
  if (c.empty()) c.resize(1);
  s.mode_ = Mode::floating;
  s.rat_.clear();
  s.cx_ = std::move(c);
  return s;
}

PowerSeries PowerSeries::zero(int order, Mode m) {
  if (m == Mode::exact) return exact(std::vector<Rational>(order + 1));
  return floating(std::vector<Cx>(order + 1));
}

PowerSeries PowerSeries::constant(const Rational& c, int order) {
  std::vector<Rational> v(order + 1);
  v[0] = c;
  return exact(std::move(v));
}

PowerSeries PowerSeries::monomial(const Rational& c, int n, int order) {
  std::vector<Rational> v(order + 1);
  if (n <= order) v[n] = c;
  return exact(std::move(v));
}

int PowerSeries::order() const { return static_cast<int>(size()) - 1; }

const Rational& PowerSeries::at(int n) const {
  if (mode_ != Mode::exact) throw ModeMismatchError("exact coefficient of a floating series");
  return rat_.at(n);
}

Cx PowerSeries::at_c(int n) const {
  if (mode_ == Mode::exact) return Cx(rat_.at(n).get_d(), 0.0);
  return cx_.at(n);
}

bool PowerSeries::is_zero() const { return first_nonzero() < 0; }

int PowerSeries::first_nonzero() const {
  for (int n = 0; n <= order(); ++n) {
    if (mode_ == Mode::exact ? (sgn(rat_[n]) != 0) : (cx_[n] != Cx(0.0, 0.0))) return n;
  }
  return -1;
}

PowerSeries PowerSeries::truncate(int n) const {
  if (n >= order()) return *this;
  PowerSeries s = *this;
  if (mode_ == Mode::exact)
    s.rat_.resize(n + 1);
  else
    s.cx_.resize(n + 1);
  return s;
}

PowerSeries PowerSeries::shift_down(int n) const {
  if (mode_ != Mode::exact) throw ModeMismatchError("shift_down needs an exact series");
  for (int i = 0; i < n; ++i)
    if (sgn(rat_.at(i)) != 0) throw DomainError("series not divisible by q^n");
  std::vector<Rational> v(rat_.begin() + n, rat_.end());
  return exact(std::move(v));
}

PowerSeries PowerSeries::shift_up(int n) const {
  if (mode_ != Mode::exact) throw ModeMismatchError("shift_up needs an exact series");
  std::vector<Rational> v(rat_.size());
  for (size_t i = n; i < v.size(); ++i) v[i] = rat_[i - n];
  return exact(std::move(v));
}

void PowerSeries::check_same_mode(const PowerSeries& b) const {
  if (mode_ != b.mode_) throw ModeMismatchError("mixed exact/floating series operands");
}

PowerSeries PowerSeries::operator-() const {
  PowerSeries s = *this;
  if (mode_ == Mode::exact)
    for (auto& c : s.rat_) c = -c;
  else
    for (auto& c : s.cx_) c = -c;
  return s;
}

PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
  a.check_same_mode(b);
  int n = std::min(a.order(), b.order());
  if (a.mode() == Mode::exact) {
    std::vector<Rational> v(n + 1);
    for (int i = 0; i <= n; ++i) v[i] = a.rat_[i] + b.rat_[i];
    return PowerSeries::exact(std::move(v));
  }
  std::vector<Cx> v(n + 1);
  for (int i = 0; i <= n; ++i) v[i] = a.cx_[i] + b.cx_[i];
  return PowerSeries::floating(std::move(v));
}

PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) { return a + (-b); }

PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
  a.check_same_mode(b);
  int n = std::min(a.order(), b.order());
  if (a.mode() == Mode::exact) {
    std::vector<Rational> v(n + 1);
    Rational t;
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j + i <= n; ++j) {
        t = a.rat_[i] * b.rat_[j];
        v[i + j] += t;
      }
    return PowerSeries::exact(std::move(v));
  }
  std::vector<Cx> v(n + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j + i <= n; ++j) v[i + j] += a.cx_[i] * b.cx_[j];
  return PowerSeries::floating(std::move(v));
}

PowerSeries PowerSeries::scaled(const Rational& c) const {
  if (mode_ != Mode::exact) throw ModeMismatchError("scaled needs an exact series");
  std::vector<Rational> v(rat_.size());
  for (size_t i = 0; i < v.size(); ++i) v[i] = rat_[i] * c;
  return exact(std::move(v));
}

PowerSeries PowerSeries::invert() const {
  int n = order();
  if (mode_ == Mode::exact) {
    if (sgn(rat_[0]) == 0) throw NonUnitError("constant term vanishes");
    std::vector<Rational> v(n + 1);
    Rational u = 1 / rat_[0];
    v[0] = u;
    for (int i = 1; i <= n; ++i) {
      Rational acc = 0;
      for (int j = 1; j <= i; ++j) acc += rat_[j] * v[i - j];
      v[i] = -u * acc;
    }
    return exact(std::move(v));
  }
  if (cx_[0] == Cx(0.0, 0.0)) throw NonUnitError("constant term vanishes");
  std::vector<Cx> v(n + 1);
  Cx u = 1.0 / cx_[0];
  v[0] = u;
  for (int i = 1; i <= n; ++i) {
    Cx acc = 0.0;
    for (int j = 1; j <= i; ++j) acc += cx_[j] * v[i - j];
    v[i] = -u * acc;
  }
  return floating(std::move(v));
}

PowerSeries PowerSeries::pow(int e) const {
  PowerSeries r = PowerSeries::constant(1, order());
  if (mode_ == Mode::floating) {
    std::vector<Cx> one(order() + 1);
    one[0] = 1.0;
    r = PowerSeries::floating(std::move(one));
  }
  PowerSeries base = *this;
  for (; e > 0; e >>= 1) {
    if (e & 1) r = r * base;
    if (e > 1) base = base * base;
  }
  return r;
}

PowerSeries PowerSeries::derivative_q() const {
  PowerSeries s = *this;
  if (mode_ == Mode::exact)
    for (int i = 0; i <= s.order(); ++i) s.rat_[i] *= i;
  else
    for (int i = 0; i <= s.order(); ++i) s.cx_[i] *= static_cast<double>(i);
  return s;
}

bool PowerSeries::same_prefix(const PowerSeries& b) const {
  check_same_mode(b);
  int n = std::min(order(), b.order());
  for (int i = 0; i <= n; ++i) {
    if (mode_ == Mode::exact ? (rat_[i] != b.rat_[i]) : (cx_[i] != b.cx_[i])) return false;
  }
  return true;
}

std::vector<Cx> PowerSeries::complex_coeffs() const {
  std::vector<Cx> v(size());
  for (size_t i = 0; i < v.size(); ++i) v[i] = at_c(static_cast<int>(i));
  return v;
}

nlohmann::json PowerSeries::to_json() const {
  nlohmann::json j;
  j["order"] = order();
  auto& c = j["coeffs"] = nlohmann::json::array();
  for (int i = 0; i <= order(); ++i) {
    if (mode_ == Mode::exact)
      c.push_back(rat_str(rat_[i]));
    else
      c.push_back({cx_[i].real(), cx_[i].imag()});
  }
  return j;
}

PowerSeries PowerSeries::from_json(const nlohmann::json& j) {
  int order = j.at("order").get<int>();
  std::vector<Rational> v;
  v.reserve(order + 1);
  for (const auto& c : j.at("coeffs")) v.push_back(rat_parse(c.get<std::string>()));
  if (static_cast<int>(v.size()) != order + 1) throw ParseError("coeffs/order mismatch");
  return exact(std::move(v));
}

PowerSeries series_add(const PowerSeries& a, const PowerSeries& b) { return a + b; }
PowerSeries series_mul(const PowerSeries& a, const PowerSeries& b) { return a * b; }
PowerSeries series_invert(const PowerSeries& a) { return a.invert(); }
PowerSeries d_operator(const PowerSeries& a) { return a.derivative_q(); }

}  // namespace qmz
