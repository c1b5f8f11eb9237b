#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cstdio>

#include "qmz/verify.hpp"

using namespace qmz;

TEST_CASE("acceptance criteria") {
  std::vector<std::string> names = suite_names();
  REQUIRE(names.size() == 14);
  bool all_pass = true;
  for (size_t i = 0; i < names.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<CheckResult> results = run_suite(names[i]);
    auto t1 = std::chrono::steady_clock::now();
    double secs = std::chrono::duration<double>(t1 - t0).count();
    size_t failed = 0;
    for (const auto& r : results)
      if (!r.pass) ++failed;
    std::printf("%s criterion %zu (%s): %zu/%zu checks, %.1f s\n",
                failed ? "FAIL" : "PASS", i + 1, names[i].c_str(), results.size() - failed,
                results.size(), secs);
    for (const auto& r : results)
      if (!r.pass) std::printf("  failed: %s -- %s\n", r.name.c_str(), r.detail.c_str());
    std::fflush(stdout);
    CHECK(failed == 0);
    all_pass = all_pass && failed == 0;
    CHECK(!results.empty());
  }
  CHECK(all_pass);
}
