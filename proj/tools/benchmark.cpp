#include <chrono>
#include <cmath>
#include <iostream>

#include "qmz/counting.hpp"
#include "qmz/equivariant.hpp"
#include "qmz/formulas.hpp"

using namespace qmz;

namespace {

template <class Fn>
double time_ms(Fn&& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const std::string& name, double serial, double parallel) {
  std::cout << name << ": serial " << serial << " ms, parallel " << parallel << " ms ("
            << serial / parallel << "x)\n";
}

}  // namespace

int main() {
  QuasiModularForm gap = gap_form(36);

  {
    ScanConfig serial_cfg, parallel_cfg;
    serial_cfg.parallel = false;
    serial_cfg.arc_samples = parallel_cfg.arc_samples = 20000;
    std::vector<ArcZero> a, b;
    double ts = time_ms([&] { a = arc_zeros(gap.components[1], 34, serial_cfg); });
    double tp = time_ms([&] { b = arc_zeros(gap.components[1], 34, parallel_cfg); });
    if (a.size() != b.size()) {
      std::cerr << "arc scan mismatch between serial and parallel runs\n";
      return 1;
    }
    report("arc scan", ts, tp);
  }

  {
    ContourConfig serial_cfg, parallel_cfg;
    serial_cfg.parallel = false;
    Rational a, b;
    double ts = time_ms([&] { a = count_zeros(gap, Lambda::finite(frac(1, 5)), serial_cfg).n; });
    double tp = time_ms([&] { b = count_zeros(gap, Lambda::finite(frac(1, 5)), parallel_cfg).n; });
    if (a != b) {
      std::cerr << "contour count mismatch between serial and parallel runs\n";
      return 1;
    }
    report("contour count", ts, tp);
  }

  {
    std::vector<CurveSample> a, b;
    double ts = time_ms([&] { a = sample_curves(gap, 120, 120, 0.55, 2.5, false); });
    double tp = time_ms([&] { b = sample_curves(gap, 120, 120, 0.55, 2.5, true); });
    if (a.size() != b.size()) {
      std::cerr << "curve grid mismatch between serial and parallel runs\n";
      return 1;
    }
    report("curve grid", ts, tp);
  }

  return 0;
}
