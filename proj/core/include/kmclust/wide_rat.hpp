#pragma once

#include <gmpxx.h>

#include "kmclust/rat.hpp"

namespace kmclust {

// Arbitrary-precision exact arithmetic for the cold paths: (1+eps)^i power
// comparisons, dual certificates, and test-side sandwich checks.
using WideRat = mpq_class;
using WideInt = mpz_class;

inline WideRat to_wide(const Rat& r) {
  WideRat q(static_cast<long>(r.num()), static_cast<long>(r.den()));
  q.canonicalize();
  return q;
}

inline double to_double(const WideRat& q) { return q.get_d(); }

// base^e for integer e (negative allowed); base must be nonzero.
WideRat pow_ratio(const WideRat& base, long e);

// Smallest integer e with base^e >= x, for base > 1, x > 0. May be negative.
long ceil_log(const WideRat& base, const WideRat& x);

// Largest integer e with base^e <= x, for base > 1, x > 0. May be negative.
long floor_log(const WideRat& base, const WideRat& x);

std::string wide_str(const WideRat& q);

}  // namespace kmclust
