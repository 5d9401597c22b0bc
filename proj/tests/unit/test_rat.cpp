#include "doctest.h"
#include "kmclust/rat.hpp"
#include "kmclust/wide_rat.hpp"

using namespace kmclust;

TEST_CASE("rational arithmetic reduces and compares exactly") {
  Rat a{1, 2}, b{1, 3};
  CHECK((a + b) == Rat{5, 6});
  CHECK((a - b) == Rat{1, 6});
  CHECK((a * b) == Rat{1, 6});
  CHECK((a / b) == Rat{3, 2});
  CHECK(Rat{2, 4} == Rat{1, 2});
  CHECK(Rat{-2, -4} == Rat{1, 2});
  CHECK(Rat{2, -4} == Rat{-1, 2});
  CHECK(a > b);
  CHECK(Rat{7, 3} < Rat{5, 2});
}

TEST_CASE("parse handles integers, fractions, decimals") {
  CHECK(Rat::parse("7") == Rat{7});
  CHECK(Rat::parse("-3/4") == Rat{-3, 4});
  CHECK(Rat::parse("2.5") == Rat{5, 2});
  CHECK(Rat::parse("0.1") == Rat{1, 10});
  CHECK(Rat::parse("2.5").str() == "5/2");
  CHECK(Rat{42}.str() == "42");
  CHECK_THROWS(Rat::parse(""));
}

TEST_CASE("division by zero and zero denominators rejected") {
  CHECK_THROWS_AS(Rat(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(Rat{1} / Rat{0}, std::invalid_argument);
}

TEST_CASE("overflow raises instead of wrapping") {
  Rat big{std::int64_t{1} << 62};
  CHECK_THROWS_AS(big * big, RatOverflow);
}

TEST_CASE("wide rationals: powers and logs") {
  WideRat base(11, 10);
  CHECK(pow_ratio(base, 3) == WideRat(1331, 1000));
  CHECK(pow_ratio(base, 0) == 1);
  CHECK(pow_ratio(base, -1) == WideRat(10, 11));
  CHECK(ceil_log(base, WideRat(1331, 1000)) == 3);
  CHECK(ceil_log(base, WideRat(134, 100)) == 4);
  CHECK(floor_log(base, WideRat(1331, 1000)) == 3);
  CHECK(floor_log(base, WideRat(134, 100)) == 3);
  // negative side
  CHECK(ceil_log(base, WideRat(1, 2)) == -7);   // 1.1^-7 ~ 0.513
  CHECK(floor_log(base, WideRat(1, 2)) == -8);  // 1.1^-8 ~ 0.466
}

TEST_CASE("rat to wide round trip") {
  Rat r{-355, 113};
  CHECK(to_wide(r) == WideRat(-355, 113));
}
