#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qmz/counting.hpp"
#include "qmz/equivariant.hpp"
#include "qmz/formulas.hpp"
#include "qmz/parser.hpp"
#include "qmz/verify.hpp"

using nlohmann::json;
using namespace qmz;

namespace {

struct Defaults {
  int order = -1;  // auto from the expression's weight
  double height = 12.0;
  double indent = 1e-3;
};

Defaults load_defaults(const std::string& config_path) {
  Defaults d;
  std::string path = config_path.empty() ? "qmz.json" : config_path;
  std::ifstream in(path);
  if (in) {
    json j = json::parse(in);
    if (j.contains("order")) d.order = j["order"].get<int>();
    if (j.contains("height")) d.height = j["height"].get<double>();
    if (j.contains("indent")) d.indent = j["indent"].get<double>();
  } else if (!config_path.empty()) {
    throw DomainError("cannot read config file: " + config_path);
  }
  if (const char* env = std::getenv("QMZ_ORDER")) d.order = std::atoi(env);
  return d;
}

Lambda parse_lambda(const std::string& s) {
  if (s == "inf" || s == "oo") return Lambda::inf();
  return Lambda::finite(rat_parse(s));
}

Gamma2 parse_gamma(const std::string& s) {
  Gamma2 g;
  if (std::sscanf(s.c_str(), "%ld,%ld,%ld,%ld", &g.a, &g.b, &g.c, &g.d) != 4)
    throw ParseError("expected a matrix as a,b,c,d: " + s);
  return g;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zero counting for quasimodular forms on translated fundamental domains"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  int order_flag = 0;
  double height_flag = 0.0, indent_flag = 0.0;
  app.add_option("--config", config_path, "config file with default order/height/indent");
  auto* oord = app.add_option("--order", order_flag, "series truncation order");
  auto* ohgt = app.add_option("--height", height_flag, "contour top height");
  auto* oind = app.add_option("--indent", indent_flag, "contour indent radius");

  std::string form_spec, lambda_str = "inf", gamma_str, out_path, suite = "all",
                         threshold_name = "v";
  bool with_formula = false, use_gamma02 = false, crit_mode = false;
  int nx = 400, ny = 400;
  double ymin = 0.55, ymax = 2.5;

  auto* c_expand = app.add_subcommand("expand", "print the exact q-expansion");
  c_expand->add_option("form", form_spec)->required();

  auto* c_count = app.add_subcommand("count", "count zeros in a translated domain");
  c_count->add_option("form", form_spec)->required();
  c_count->add_option("--lambda", lambda_str, "rational, decimal, or inf");
  c_count->add_flag("--formula", with_formula, "also evaluate the closed formula");
  c_count->add_flag("--gamma02", use_gamma02, "count over a level-2 translate");
  c_count->add_option("--gamma", gamma_str, "level-2 matrix as a,b,c,d");

  auto* c_formula = app.add_subcommand("formula", "evaluate the closed formula only");
  c_formula->add_option("form", form_spec)->required();
  c_formula->add_option("--lambda", lambda_str);
  c_formula->add_flag("--crit", crit_mode, "count critical points of a depth-0 form");

  auto* c_spectrum = app.add_subcommand("spectrum", "boundary zero data of a depth-1 form");
  c_spectrum->add_option("form", form_spec)->required();

  auto* c_curves = app.add_subcommand("curves", "sample the companion-map branches");
  c_curves->add_option("form", form_spec)->required();
  c_curves->add_option("--out", out_path)->required();
  c_curves->add_option("--nx", nx);
  c_curves->add_option("--ny", ny);
  c_curves->add_option("--ymin", ymin);
  c_curves->add_option("--ymax", ymax);

  auto* c_verify = app.add_subcommand("verify", "run a named verification suite");
  c_verify->add_option("suite", suite, "suite name or 'all'");

  auto* c_threshold = app.add_subcommand("threshold", "named bifurcation values");
  c_threshold->add_option("name", threshold_name, "v, v_inv, or t1");

  CLI11_PARSE(app, argc, argv);

  try {
    Defaults d = load_defaults(config_path);
    if (oord->count()) d.order = order_flag;
    if (ohgt->count()) d.height = height_flag;
    if (oind->count()) d.indent = indent_flag;
    ContourConfig ccfg;
    ccfg.top_height = d.height;
    ccfg.indent_radius = d.indent;

    if (*c_expand) {
      QuasiModularForm f = parse_form(form_spec, d.order);
      PowerSeries s = f.expand();
      if (d.order > 0 && d.order < s.order()) s = s.truncate(d.order);
      json j = s.to_json();
      j["weight"] = f.weight;
      j["depth"] = f.depth();
      std::cout << j.dump(2) << "\n";
      return 0;
    }

    if (*c_count) {
      QuasiModularForm f = parse_form(form_spec, d.order);
      if (use_gamma02) {
        if (gamma_str.empty())
          throw DomainError("--gamma02 needs an explicit matrix via --gamma a,b,c,d");
        Gamma2 g = parse_gamma(gamma_str);
        json j;
        j["gamma"] = {g.a, g.b, g.c, g.d};
        j["n"] = rat_str(count_zeros_gamma02(f, g, ccfg));
        std::cout << j.dump(2) << "\n";
        return 0;
      }
      if (lambda_str.find('.') != std::string::npos) {
        json j;
        j["lambda"] = lambda_str;
        j["n"] = rat_str(count_zeros_real(f, std::stod(lambda_str), ccfg));
        j["method"] = "contour";
        std::cout << j.dump(2) << "\n";
        return 0;
      }
      Lambda l = parse_lambda(lambda_str);
      ZeroCountReport rep = count_zeros(f, l, ccfg);
      json j = rep.to_json();
      bool agree = true;
      if (with_formula) {
        try {
          LambdaClass cls = classify_lambda(l);
          Rational closed = f.depth() == 0
                                ? throw DomainError("no closed count for depth 0")
                                : n_depth1(f, cls);
          agree = closed == rep.n;
          j["formula"] = rat_str(closed);
          j["agreement"] = agree;
        } catch (const Error& e) {
          j["formula"] = std::string("inapplicable: ") + e.what();
        }
      }
      std::cout << j.dump(2) << "\n";
      return agree ? 0 : 1;
    }

    if (*c_formula) {
      QuasiModularForm f = parse_form(form_spec, d.order);
      LambdaClass cls = classify_lambda(parse_lambda(lambda_str));
      Rational n = crit_mode ? n_crit(f.expand(), f.weight, cls) : n_depth1(f, cls);
      json j;
      j["lambda"] = lambda_str;
      const char* names[] = {"outer", "mid", "inner"};
      j["class"] = names[static_cast<int>(cls.kind)];
      j["n"] = rat_str(n);
      std::cout << j.dump(2) << "\n";
      return 0;
    }

    if (*c_spectrum) {
      QuasiModularForm f = parse_form(form_spec, d.order);
      std::cout << spectrum(f).to_json().dump(2) << "\n";
      return 0;
    }

    if (*c_curves) {
      QuasiModularForm f = parse_form(form_spec, d.order);
      std::vector<CurveSample> samples = sample_curves(f, nx, ny, ymin, ymax);
      std::ofstream out(out_path);
      if (!out) throw DomainError("cannot open output file: " + out_path);
      write_curves_csv(out, samples);
      std::cerr << samples.size() << " samples written to " << out_path << "\n";
      return 0;
    }

    if (*c_verify) {
      std::vector<CheckResult> results = run_suite(suite);
      int failed = 0;
      for (const auto& r : results) {
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.name;
        if (!r.pass && !r.detail.empty()) std::cout << " -- " << r.detail;
        std::cout << "\n";
        if (!r.pass) ++failed;
      }
      std::cout << (failed ? "FAILED " : "OK ") << (results.size() - failed) << "/"
                << results.size() << " checks\n";
      return failed ? 1 : 0;
    }

    if (*c_threshold) {
      json j;
      j["name"] = threshold_name;
      j["value"] = find_threshold(threshold_name);
      std::cout << j.dump(2) << "\n";
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
