#include "kmclust/rat.hpp"

#include <cstdlib>
#include <limits>
#include <ostream>

namespace kmclust {

namespace {

using u128 = unsigned __int128;
using i128 = __int128;

u128 uabs128(i128 v) { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t narrow(i128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw RatOverflow{};
  return static_cast<std::int64_t>(v);
}

}  // namespace

Rat Rat::make_reduced(i128 num, i128 den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num == 0) return Rat{};
  u128 g = gcd128(uabs128(num), static_cast<u128>(den));
  num /= static_cast<i128>(g);
  den /= static_cast<i128>(g);
  Rat r;
  r.num_ = narrow(num);
  r.den_ = narrow(den);
  return r;
}

Rat::Rat(std::int64_t num, std::int64_t den) { *this = make_reduced(num, den); }

Rat Rat::operator-() const {
  Rat r = *this;
  r.num_ = narrow(-static_cast<i128>(num_));
  return r;
}

Rat& Rat::operator+=(const Rat& o) {
  i128 num = static_cast<i128>(num_) * o.den_ + static_cast<i128>(o.num_) * den_;
  i128 den = static_cast<i128>(den_) * o.den_;
  *this = make_reduced(num, den);
  return *this;
}

Rat& Rat::operator-=(const Rat& o) {
  i128 num = static_cast<i128>(num_) * o.den_ - static_cast<i128>(o.num_) * den_;
  i128 den = static_cast<i128>(den_) * o.den_;
  *this = make_reduced(num, den);
  return *this;
}

Rat& Rat::operator*=(const Rat& o) {
  *this = make_reduced(static_cast<i128>(num_) * o.num_, static_cast<i128>(den_) * o.den_);
  return *this;
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.num_ == 0) throw std::invalid_argument("rational division by zero");
  *this = make_reduced(static_cast<i128>(num_) * o.den_, static_cast<i128>(den_) * o.num_);
  return *this;
}

Rat Rat::parse(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    std::int64_t n = std::stoll(text.substr(0, slash));
    std::int64_t d = std::stoll(text.substr(slash + 1));
    return Rat{n, d};
  }
  auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    std::size_t places = text.size() - dot - 1;
    if (places == 0 || places > 18) throw std::invalid_argument("bad decimal literal: " + text);
    std::int64_t den = 1;
    for (std::size_t i = 0; i < places; ++i) den *= 10;
    return Rat{std::stoll(digits), den};
  }
  return Rat{std::stoll(text), 1};
}

std::string Rat::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

}  // namespace kmclust
