#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include "qmz/forms.hpp"

using namespace qmz;

namespace {
// divisor power sum, computed independently of the library
Rational sigma(int n, int p) {
  Rational s = 0;
  for (int d = 1; d <= n; ++d)
    if (n % d == 0) {
      Rational t = 1;
      for (int i = 0; i < p; ++i) t *= d;
      s += t;
    }
  return s;
}
}  // namespace

TEST_CASE("eisenstein series against divisor sums") {
  PowerSeries e2 = eisenstein(2, 12), e4 = eisenstein(4, 12), e6 = eisenstein(6, 12);
  CHECK(e2.at(0) == 1);
  for (int n = 1; n <= 12; ++n) {
    CHECK(e2.at(n) == Rational(-24) * sigma(n, 1));
    CHECK(e4.at(n) == Rational(240) * sigma(n, 3));
    CHECK(e6.at(n) == Rational(-504) * sigma(n, 5));
  }
  CHECK(eisenstein_general(4, 8).same_prefix(e4));
  CHECK(eisenstein_general(6, 8).same_prefix(e6));
  for (int n = 1; n <= 8; ++n) CHECK(eisenstein_general(8, 8).at(n) == Rational(480) * sigma(n, 7));
  // the weight-8 space is one-dimensional, so E8 = E4^2
  CHECK(eisenstein_general(8, 10).same_prefix(eisenstein(4, 10).pow(2)));
}

TEST_CASE("delta and j expansions") {
  PowerSeries d = delta(8);
  const long tau[] = {0, 1, -24, 252, -1472, 4830, -6048, -16744, 84480};
  for (int n = 0; n <= 8; ++n) CHECK(d.at(n) == tau[n]);
  PowerSeries qj = j_times_q(4);
  CHECK(qj.at(0) == 1);
  CHECK(qj.at(1) == 744);
  CHECK(qj.at(2) == 196884);
  CHECK(qj.at(3) == 21493760);
}

TEST_CASE("quasimodular arithmetic") {
  QuasiModularForm e2 = qm_e2(16), e4 = qm_modular(eisenstein(4, 16), 4);
  QuasiModularForm g = qm_mul(e2, e4);
  CHECK(g.weight == 6);
  CHECK(g.depth() == 1);
  CHECK(g.expand().same_prefix(eisenstein(2, 16) * eisenstein(4, 16)));
  CHECK(qm_sub(g, g).is_zero());
  CHECK(qm_pow(e2, 2).expand().same_prefix(eisenstein(2, 16).pow(2)));
  CHECK_THROWS_AS(qm_add(e2, e4), DomainError);
  nlohmann::json j = g.to_json();
  CHECK(j["weight"] == 6);
  CHECK(j["depth"] == 1);
  QuasiModularForm back = QuasiModularForm::from_json(j);
  CHECK(back.expand().same_prefix(g.expand()));
}

TEST_CASE("derivations") {
  QuasiModularForm e2 = qm_e2(16);
  QuasiModularForm f = frak_d(e2);
  CHECK(f.depth() == 0);
  CHECK(f.components[0].at(0) == 12);
  CHECK(f.components[0].truncate(10).same_prefix(PowerSeries::constant(12, 10)));
  // D agrees with the coefficientwise derivative of the expansion
  QuasiModularForm g = qm_mul(e2, qm_modular(eisenstein(4, 16), 4));
  CHECK(d_form(g).expand().same_prefix(g.expand().derivative_q()));
  CHECK(d_form(e2).expand().same_prefix(eisenstein(2, 16).derivative_q()));
  // the commutator [frak, D] acts as multiplication by the weight
  CHECK(qm_sub(w_operator(g), qm_scale(g, 6)).is_zero());
  // classical Serre derivative values
  QuasiModularForm t4 = serre_theta(qm_modular(eisenstein(4, 16), 4));
  CHECK(t4.weight == 6);
  CHECK(t4.expand().same_prefix(eisenstein(6, 16).scaled(frac(-1, 3))));
  QuasiModularForm t6 = serre_theta(qm_modular(eisenstein(6, 16), 6));
  CHECK(t6.expand().same_prefix(eisenstein(4, 16).pow(2).scaled(frac(-1, 2))));
}

TEST_CASE("graded spaces and exact solving") {
  CHECK(dim_qm_space(4, 0) == 1);
  CHECK(dim_qm_space(12, 0) == 2);
  CHECK(dim_qm_space(12, 1) == 3);
  CHECK(dim_qm_space(36, 1) == 7);
  FormSpaceBasis b = basis(12, 1, 20);
  CHECK(b.elements.size() == 3);
  for (const auto& e : b.elements) CHECK(e.weight == 12);
  Mat a = {{1, 2}, {3, 4}};
  auto x = solve_exact(a, {5, 6});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == -4);
  CHECK((*x)[1] == frac(9, 2));
  CHECK(!solve_exact({{1, 1}, {2, 2}}, {1, 3}).has_value());
  CHECK(in_modular_span(eisenstein(4, 30).pow(3), 12).has_value());
  CHECK(!in_modular_span(eisenstein(2, 30).pow(2), 4).has_value());
}

TEST_CASE("exact vanishing orders") {
  CHECK(v_rho_exact(eisenstein(4, 30), 4) == 1);
  CHECK(v_i_exact(eisenstein(4, 30), 4) == 0);
  CHECK(v_rho_exact(eisenstein(6, 30), 6) == 0);
  CHECK(v_i_exact(eisenstein(6, 30), 6) == 1);
  PowerSeries d = delta(40);
  CHECK(v_infinity(d) == 1);
  CHECK(v_rho_exact(d, 12) == 0);
  CHECK(v_i_exact(d, 12) == 0);
  CHECK(v_rho_exact(eisenstein_general(14, 40), 14) == 2);
  CHECK(v_i_exact(eisenstein_general(14, 40), 14) == 1);
}

TEST_CASE("polynomial extraction in j") {
  // E4^3 + E6^2 = Delta (2j - 1728)
  PowerSeries s = eisenstein(4, 40).pow(3) + eisenstein(6, 40).pow(2);
  std::vector<Rational> p = j_polynomial(s, 12);
  REQUIRE(p.size() == 2);
  CHECK(p[0] == -1728);
  CHECK(p[1] == 2);
  // E4^3 = Delta j: the monomial factor absorbs everything
  std::vector<Rational> p2 = j_polynomial(eisenstein(4, 40).pow(3), 12);
  CHECK(p2.size() == 1);
}

TEST_CASE("resultants and roots") {
  // x^2 - 1 and x - 1 share a root; x - 2 does not
  CHECK(sgn_of(resultant({-1, 0, 1}, {-1, 1})) == 0);
  CHECK(sgn_of(resultant({-1, 0, 1}, {-2, 1})) != 0);
  std::vector<Cx> r = polynomial_roots({4, -5, 1});  // (x-1)(x-4)
  REQUIRE(r.size() == 2);
  std::sort(r.begin(), r.end(), [](Cx a, Cx b) { return a.real() < b.real(); });
  CHECK(std::abs(r[0] - Cx(1, 0)) < 1e-10);
  CHECK(std::abs(r[1] - Cx(4, 0)) < 1e-10);
}

TEST_CASE("gap form") {
  QuasiModularForm f = gap_form(36);
  PowerSeries e = f.expand();
  CHECK(e.at(0) == 1);
  for (int i = 1; i <= 6; ++i) CHECK(e.at(i) == 0);
  CHECK(e.at(7) == rat_parse("212963830173619200"));
  CHECK(e.at(8) == rat_parse("45122255555990230800"));
  CHECK(e.at(9) == rat_parse("3920264199663225523200"));
}

TEST_CASE("extremal forms vanish maximally") {
  for (long k : {6, 12, 18}) {
    QuasiModularForm f = extremal_form(k);
    CHECK(f.weight == k);
    CHECK(f.depth() == 1);
    CHECK(v_infinity(f.expand()) == dim_qm_space(k, 1) - 1);
  }
}

TEST_CASE("irreducibility of depth-1 forms") {
  CHECK(is_irreducible_depth1(qm_e2(20)));
  CHECK(is_irreducible_depth1(d_form(qm_modular(eisenstein(4, 40), 4))));
  // the derivative of Delta is Delta times E2: components share all zeros
  CHECK(!is_irreducible_depth1(d_form(qm_modular(delta(40), 12))));
  // the derivative of E4^2 has E4 in both components
  CHECK(!is_irreducible_depth1(d_form(qm_modular(eisenstein(4, 40).pow(2), 8))));
  CHECK_THROWS_AS(is_irreducible_depth1(qm_modular(delta(40), 12)), DomainError);
}
