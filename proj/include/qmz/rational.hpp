#pragma once
#include <gmpxx.h>

#include <string>

#include "qmz/error.hpp"

namespace qmz {

using Rational = mpq_class;

inline std::string rat_str(const Rational& r) { return r.get_str(); }

inline Rational rat_parse(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0) throw ParseError("bad rational: " + s);
  r.canonicalize();
  return r;
}

inline int sgn_of(const Rational& r) { return sgn(r); }

// canonicalized fraction (the two-argument mpq constructor does not reduce)
inline Rational frac(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// floor(a/b) for integers given as a rational a/b
inline long floor_long(long num, long den) {
  long q = num / den;
  if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
  return q;
}
inline long ceil_long(long num, long den) { return -floor_long(-num, den); }

}  // namespace qmz
