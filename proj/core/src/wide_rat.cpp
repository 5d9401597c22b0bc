#include "kmclust/wide_rat.hpp"

#include <cmath>
#include <stdexcept>

namespace kmclust {

WideRat pow_ratio(const WideRat& base, long e) {
  if (base == 0) throw std::invalid_argument("pow_ratio: zero base");
  bool invert = e < 0;
  unsigned long k = invert ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  WideRat out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), k);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), k);
  out.canonicalize();
  if (invert) out = 1 / out;
  return out;
}

long ceil_log(const WideRat& base, const WideRat& x) {
  if (!(base > 1) || !(x > 0)) throw std::invalid_argument("ceil_log: need base > 1, x > 0");
  // float estimate, then exact adjustment
  double guess = std::log(x.get_d()) / std::log(base.get_d());
  long e = static_cast<long>(std::floor(guess)) - 2;
  WideRat p = pow_ratio(base, e);
  while (p < x) {
    p *= base;
    ++e;
  }
  for (;;) {
    WideRat down = p / base;
    if (down < x) break;
    p = down;
    --e;
  }
  return e;
}

long floor_log(const WideRat& base, const WideRat& x) {
  long e = ceil_log(base, x);
  if (pow_ratio(base, e) == x) return e;
  return e - 1;
}

std::string wide_str(const WideRat& q) { return q.get_str(); }

}  // namespace kmclust
