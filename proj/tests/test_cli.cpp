#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <string>

#include <nlohmann/json.hpp>

#include "qmz/parser.hpp"

using namespace qmz;

namespace {

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") + std::string(QMZ_BIN) + " " + args +
                    " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  RunResult r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int rc = pclose(p);
  r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return r;
}

}  // namespace

TEST_CASE("parsing generators and operators") {
  PowerSeries e2 = parse_form("E2", 4).expand();
  CHECK(e2.at(0) == 1);
  CHECK(e2.at(1) == -24);
  CHECK(e2.at(2) == -72);
  PowerSeries dd = parse_form("D(Delta)", 6).expand();
  CHECK(dd.at(0) == 0);
  CHECK(dd.at(1) == 1);
  CHECK(dd.at(2) == -48);
  QuasiModularForm f = parse_form("E2^2-E4", 20);
  CHECK(f.weight == 4);
  CHECK(f.depth() == 2);
  CHECK(f.expand().same_prefix(eisenstein(2, 20).pow(2) - eisenstein(4, 20)));
  CHECK(parse_form("theta(E4)", 20).expand().same_prefix(
      eisenstein(6, 20).scaled(frac(-1, 3))));
  CHECK(parse_form("3/4*E4", 20).expand().same_prefix(eisenstein(4, 20).scaled(frac(3, 4))));
  CHECK(parse_form("-E6", 20).expand().same_prefix(eisenstein(6, 20).scaled(-1)));
  CHECK(parse_form("E14", 20).weight == 14);
  CHECK(parse_form("D(E14)", 20).weight == 16);
}

TEST_CASE("the j generator clears its pole") {
  // j Delta = E4^3
  CHECK(parse_form("j*Delta", 24).expand().same_prefix(eisenstein(4, 24).pow(3)));
  CHECK(parse_form("(j-744)*Delta", 24).weight == 12);
  CHECK_THROWS_AS(parse_form("j", 24), DomainError);
  CHECK_THROWS_AS(parse_form("j*E4", 24), DomainError);
}

TEST_CASE("presets") {
  CHECK(parse_form("gap:36").expand().at(7) == rat_parse("212963830173619200"));
  CHECK(parse_form("extremal:12").weight == 12);
  QuasiModularForm p = parse_form("Ek':14");
  CHECK(p.weight == 16);
  CHECK(p.expand().same_prefix(parse_form("D(E14)", p.order()).expand()));
  CHECK_THROWS_AS(parse_form("bogus:7"), ParseError);
}

TEST_CASE("parse and weight errors") {
  CHECK_THROWS_AS(parse_form("E5", 10), ParseError);
  CHECK_THROWS_AS(parse_form("E4+", 10), ParseError);
  CHECK_THROWS_AS(parse_form("(E4", 10), ParseError);
  CHECK_THROWS_AS(parse_form("E4 E6", 10), ParseError);
  CHECK_THROWS_AS(parse_form("E4^-2", 10), ParseError);
  CHECK_THROWS_AS(parse_form("E4+E6", 10), DomainError);
  try {
    parse_form("E4 @", 10);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("position") != std::string::npos);
  }
}

TEST_CASE("expand subcommand emits exact coefficients") {
  RunResult r = run("expand E2 --order 2");
  CHECK(r.status == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["coeffs"][0] == "1");
  CHECK(j["coeffs"][1] == "-24");
  CHECK(j["coeffs"][2] == "-72");
  CHECK(j["weight"] == 2);
  // round trip through the series serialization
  PowerSeries back = PowerSeries::from_json(j);
  CHECK(back.same_prefix(eisenstein(2, 2)));
}

TEST_CASE("count subcommand with formula agreement") {
  RunResult r = run("count E2 --lambda 1/4 --formula");
  CHECK(r.status == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["n"] == "1");
  CHECK(j["agreement"] == true);
  RunResult r14 = run("count \"Ek':14\" --lambda inf");
  nlohmann::json j14 = nlohmann::json::parse(r14.out);
  CHECK(j14["n"] == "7/3");
}

TEST_CASE("count subcommand over the level-2 domain") {
  RunResult r = run("count \"E2^2-E4\" --gamma02 --gamma 1,0,2,1");
  CHECK(r.status == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["n"] == "1");
}

TEST_CASE("formula and spectrum subcommands") {
  RunResult r = run("formula gap:36 --lambda 3/4");
  CHECK(r.status == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["class"] == "mid");
  CHECK(j["n"] == "5");
  RunResult s = run("spectrum E2");
  CHECK(s.status == 0);
  CHECK(nlohmann::json::parse(s.out).contains("arc_angles"));
}

TEST_CASE("threshold subcommand") {
  RunResult r = run("threshold t1");
  CHECK(r.status == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  double v = j["value"].get<double>();
  CHECK(std::abs(v - 1.596) < 1e-3);
}

TEST_CASE("curves subcommand writes csv and rejects depth 0") {
  std::string path = "cli_curves_test.csv";
  RunResult r = run("curves E2 --nx 12 --ny 12 --out " + path);
  CHECK(r.status == 0);
  FILE* f = fopen(path.c_str(), "r");
  REQUIRE(f != nullptr);
  char line[128];
  REQUIRE(fgets(line, sizeof line, f) != nullptr);
  CHECK(std::string(line) == "re_z,im_z,re_h,im_h,branch_id\n");
  fclose(f);
  remove(path.c_str());
  CHECK(run("curves Delta --out " + path).status == 2);
}

TEST_CASE("verify subcommand exit codes") {
  RunResult r = run("verify gap-coefficients");
  CHECK(r.status == 0);
  CHECK(r.out.find("PASS") != std::string::npos);
  CHECK(run("verify nonexistent-suite").status == 2);
}

TEST_CASE("environment variable controls the order") {
  RunResult r = run("expand Delta --order 3");
  nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["coeffs"].size() == 4);
  // the flag wins over the environment, the environment over the default
  RunResult env = run("expand Delta", "QMZ_ORDER=5");
  CHECK(nlohmann::json::parse(env.out)["coeffs"].size() == 6);
  RunResult both = run("expand Delta --order 3", "QMZ_ORDER=5");
  CHECK(nlohmann::json::parse(both.out)["coeffs"].size() == 4);
}
