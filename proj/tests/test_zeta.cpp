#include <doctest.h>

#include "oracle.hpp"
#include "sigmabias/enclosure.hpp"

using namespace sigmabias;

TEST_CASE("zeta2 enclosure endpoints for N = 1") {
  const Enclosure e = zeta2_enclosure(1);
  CHECK(e.lo == make_rational(3, 2));
  CHECK(e.hi == BigRational(2));
}

TEST_CASE("zeta2 enclosure contains the 50-digit reference") {
  for (const std::uint64_t n : {10ull, 100ull, 10'000ull, 100'000ull}) {
    const Enclosure e = zeta2_enclosure(n);
    CHECK(oracle::encloses_reference(e.lo, e.hi, oracle::zeta2_reference()));
  }
}

TEST_CASE("zeta2 width is exactly 1/(N(N+1)) and strictly decreasing") {
  BigRational previous = 10;
  for (const std::uint64_t n : {1ull, 2ull, 3ull, 10ull, 100ull, 10'000ull}) {
    const Enclosure e = zeta2_enclosure(n);
    const BigRational width = e.width();
    CHECK(width == make_rational(1, BigInt(n) * (BigInt(n) + 1)));
    CHECK(width < previous);
    previous = width;
  }
  // N = 1e4: width < 1e-8
  CHECK(zeta2_enclosure(10'000).width() < make_rational(1, 100'000'000));
}

TEST_CASE("zeta2 rejects zero terms") {
  CHECK_THROWS_AS(zeta2_enclosure(0), std::invalid_argument);
}
