#pragma once
#include "qmz/boundary.hpp"

namespace qmz {

// interval class of the translate parameter by |lambda|
struct LambdaClass {
  enum Kind { outer, mid, inner } kind = outer;  // (1, inf], (1/2, 1), [0, 1/2)
  LambdaClass() = default;
  LambdaClass(Kind k) : kind(k) {}
};

LambdaClass classify_lambda(const Lambda& lambda);

// closed count for critical points of a modular form g of weight k
Rational n_crit(const PowerSeries& g, long k, LambdaClass cls, const ScanConfig& scfg = {},
                const EvalConfig& cfg = {});

// closed counts for an irreducible depth-1 form
Rational n_depth1(const QuasiModularForm& f, LambdaClass cls, const ScanConfig& scfg = {},
                  const EvalConfig& cfg = {});

// independent route to the outer-class value via the full arc
Rational n_infinity_depth1(const QuasiModularForm& f, const ScanConfig& scfg = {},
                           const EvalConfig& cfg = {});

// count for a two-term sum f0 + fj of modular forms of weights k and k - 2j
Rational n_mixed(const PowerSeries& f0, long k, const PowerSeries& fj, int j,
                 const ScanConfig& scfg = {}, const EvalConfig& cfg = {});

enum class PairRegime { mid, outer };  // 1/2 < |lambda| < 2  vs  the complement

Rational pair_sum(const QuasiModularForm& f, PairRegime regime, const ScanConfig& scfg = {},
                  const EvalConfig& cfg = {});

enum class KnownTable { E2, DEk };

Rational known_tables(KnownTable name, long k, LambdaClass cls);

std::pair<long, long> upper_bound(long k);  // (outer bound, inner bound)

std::pair<long, long> chebyshev_counts(long n);  // zeros of Re/Im on the open arc

}  // namespace qmz
