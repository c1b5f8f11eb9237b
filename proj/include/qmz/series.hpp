#pragma once
#include <complex>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qmz/rational.hpp"

namespace qmz {

using Cx = std::complex<double>;

enum class Mode { exact, floating };

// Truncated power series in q. Exact mode carries rationals end-to-end;
// floating mode exists for evaluation only. Arithmetic truncates to the
// minimum order of the operands; mixing modes is an error.
class PowerSeries {
 public:
  PowerSeries() : mode_(Mode::exact), rat_(1) {}

  static PowerSeries exact(std::vector<Rational> c);
  static PowerSeries floating(std::vector<Cx> c);
  static PowerSeries zero(int order, Mode m = Mode::exact);
  static PowerSeries constant(const Rational& c, int order);
  static PowerSeries monomial(const Rational& c, int n, int order);

  Mode mode() const { return mode_; }
  int order() const;
  const Rational& at(int n) const;  // exact mode only
  Cx at_c(int n) const;             // either mode

  bool is_zero() const;
  int first_nonzero() const;  // -1 if identically 0 up to the order

  PowerSeries truncate(int n) const;
  PowerSeries shift_down(int n) const;  // divide by q^n (requires divisibility)
  PowerSeries shift_up(int n) const;    // multiply by q^n (order preserved)

  PowerSeries operator-() const;
  friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b);
  friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b);
  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);
  PowerSeries scaled(const Rational& c) const;
  PowerSeries invert() const;
  PowerSeries pow(int e) const;
  PowerSeries derivative_q() const;  // q d/dq

  // equality of coefficients up to the minimum of the two orders
  bool same_prefix(const PowerSeries& b) const;

  std::vector<Cx> complex_coeffs() const;

  nlohmann::json to_json() const;
  static PowerSeries from_json(const nlohmann::json& j);

 private:
  Mode mode_;
  std::vector<Rational> rat_;
  std::vector<Cx> cx_;
  size_t size() const { return mode_ == Mode::exact ? rat_.size() : cx_.size(); }
  void check_same_mode(const PowerSeries& b) const;
};

// free functions on series
PowerSeries series_add(const PowerSeries& a, const PowerSeries& b);
PowerSeries series_mul(const PowerSeries& a, const PowerSeries& b);
PowerSeries series_invert(const PowerSeries& a);
PowerSeries d_operator(const PowerSeries& a);

}  // namespace qmz
