#pragma once
#include <optional>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qmz/series.hpp"

namespace qmz {

// default truncation order used when constructing forms of weight k
inline int default_order(long k) { return static_cast<int>(2 * (k < 2 ? 2 : k) + 16); }

// f = sum_j f_j E2^j with f_j modular of weight k-2j. Components are exact
// series; trailing zero components are trimmed so the depth is tight.
struct QuasiModularForm {
  long weight = 0;
  std::vector<PowerSeries> components;

  QuasiModularForm() : components(1) {}
  QuasiModularForm(long k, std::vector<PowerSeries> comps);

  int depth() const { return static_cast<int>(components.size()) - 1; }
  int order() const;
  bool is_zero() const;
  const PowerSeries& component(int j) const { return components.at(j); }
  PowerSeries expand() const;  // q-expansion of f itself

  nlohmann::json to_json() const;
  static QuasiModularForm from_json(const nlohmann::json& j);
};

// generators
PowerSeries eisenstein(int k, int order);          // k in {2,4,6}
PowerSeries eisenstein_general(long k, int order); // any even k >= 2 (Bernoulli)
PowerSeries delta(int order);
PowerSeries j_times_q(int order);  // q*j, constant term 1

QuasiModularForm qm_modular(PowerSeries g, long k);  // depth 0
QuasiModularForm qm_e2(int order);
QuasiModularForm qm_add(const QuasiModularForm& a, const QuasiModularForm& b);
QuasiModularForm qm_sub(const QuasiModularForm& a, const QuasiModularForm& b);
QuasiModularForm qm_mul(const QuasiModularForm& a, const QuasiModularForm& b);
QuasiModularForm qm_scale(const QuasiModularForm& a, const Rational& c);
QuasiModularForm qm_pow(const QuasiModularForm& a, int e);

// derivations
QuasiModularForm frak_d(const QuasiModularForm& f, int m = 1);  // 𝔡^m f
QuasiModularForm d_form(const QuasiModularForm& f);             // D = q d/dq
QuasiModularForm serre_theta(const QuasiModularForm& g);        // depth 0 only
QuasiModularForm w_operator(const QuasiModularForm& f);         // [𝔡,D]

struct FormSpaceBasis {
  long weight = 0;
  int max_depth = 0;
  std::vector<QuasiModularForm> elements;
};
FormSpaceBasis basis(long k, int p, int order);
long dim_qm_space(long k, int p);

QuasiModularForm gap_form(long k);
QuasiModularForm extremal_form(long k);

// exact linear algebra over the rationals
using Mat = std::vector<std::vector<Rational>>;
std::optional<std::vector<Rational>> solve_exact(Mat a, std::vector<Rational> b);

// coordinates of s in the monomial basis of M_k, or nullopt if not a member
std::optional<std::vector<Rational>> in_modular_span(const PowerSeries& s, long k);

// exact vanishing orders of a modular form (series of weight k)
int v_infinity(const PowerSeries& g);
int v_rho_exact(const PowerSeries& g, long k);
int v_i_exact(const PowerSeries& g, long k);

// write g = Delta^d E4^a E6^b m with m nonvanishing at rho, i, i∞ and return
// the coefficients (ascending) of the polynomial P with m = Delta^{deg P} P(j)
std::vector<Rational> j_polynomial(const PowerSeries& g, long k);

Rational resultant(const std::vector<Rational>& a, const std::vector<Rational>& b);
std::vector<Cx> polynomial_roots(const std::vector<Rational>& p);

bool is_irreducible_depth1(const QuasiModularForm& f);

}  // namespace qmz
