#include <doctest.h>

#include <cstdlib>
#include <numeric>

#include "oracle.hpp"
#include "sigmabias/errors.hpp"
#include "sigmabias/smooth.hpp"

using namespace sigmabias;

namespace {

std::vector<std::uint64_t> values(const std::vector<Factored>& xs) {
  std::vector<std::uint64_t> out;
  for (const auto& x : xs) out.push_back(x.value);
  return out;
}

}  // namespace

TEST_CASE("smooth_numbers spec examples") {
  CHECK(values(smooth_numbers(5, 10)) ==
        std::vector<std::uint64_t>{1, 2, 3, 4, 5, 6, 8, 9, 10});
  CHECK(values(smooth_numbers(2, 10)) == std::vector<std::uint64_t>{1, 2, 4, 8});
}

TEST_CASE("smooth_numbers equals the brute filter, with valid factorizations") {
  for (const std::uint64_t y : {2ull, 3ull, 5ull, 7ull, 13ull}) {
    const auto xs = smooth_numbers(y, 10'000);
    CHECK(values(xs) == oracle::smooth_by_filter(y, 10'000));
    for (const auto& x : xs) {
      std::uint64_t product = 1;
      for (const auto& [p, e] : x.factors) {
        CHECK(p <= y);
        for (std::uint32_t i = 0; i < e; ++i) product *= p;
      }
      CHECK(product == x.value);
    }
  }
}

TEST_CASE("smooth counts: recursive nesting against the heap oracle") {
  const auto primes = primes_up_to(157);
  CHECK(count_smooth(primes, 10'000'000) == 489'729);
  CHECK(oracle::count_smooth_by_heap(primes, 10'000'000) == 489'729);
  // frozen regression for the full production range
  CHECK(count_smooth(primes, 1'000'000'000) == 6'980'291);
  if (std::getenv("SIGMABIAS_EXTENDED_TESTS")) {
    CHECK(oracle::count_smooth_by_heap(primes, 1'000'000'000) == 6'980'291);
  }
}

TEST_CASE("pair_stream spec examples") {
  {
    const auto pairs = pair_stream(30, 5, 30);
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0].a.value == 1);
    CHECK(pairs[0].b.value == 30);
  }
  {
    const auto pairs = pair_stream(30, 5, 60);
    REQUIRE(pairs.size() == 2);
    CHECK(pairs[0].a.value == 1);
    CHECK(pairs[0].b.value == 30);
    CHECK(pairs[1].a.value == 1);
    CHECK(pairs[1].b.value == 60);  // (2,30) excluded by the gcd condition
  }
  {
    const auto pairs = pair_stream(2, 2, 8);
    REQUIRE(pairs.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(pairs[i].a.value == 1);
    CHECK(pairs[0].b.value == 2);
    CHECK(pairs[1].b.value == 4);
    CHECK(pairs[2].b.value == 8);
  }
}

TEST_CASE("pair_stream equals the brute-force double loop") {
  for (const std::uint64_t m : {2ull, 30ull}) {
    for (const std::uint64_t y : {5ull, 7ull, 13ull}) {
      for (const std::uint64_t z : {50ull, 1'000ull, 10'000ull}) {
        if (z < m) continue;
        // brute force: all (a, b) with a*b <= z, both smooth, m | b, coprime
        std::vector<std::pair<std::uint64_t, std::uint64_t>> expected;
        const auto smooth = oracle::smooth_by_filter(y, z);
        for (const std::uint64_t b : smooth) {
          if (b % m != 0) continue;
          for (const std::uint64_t a : smooth) {
            if (a > z / b) break;
            if (std::gcd(a, b) == 1) expected.emplace_back(b, a);
          }
        }
        std::vector<std::pair<std::uint64_t, std::uint64_t>> got;
        std::uint64_t checksum = 0;
        for_each_pair({m, y, z}, [&](const SmoothPair& pair) {
          got.emplace_back(pair.b.value, pair.a.value);
          checksum += pair.a.value ^ pair.b.value;
        });
        CHECK(got == expected);  // same set, same (b, a) ascending order
        // deterministic rerun
        std::uint64_t checksum2 = 0;
        for_each_pair({m, y, z}, [&](const SmoothPair& pair) {
          checksum2 += pair.a.value ^ pair.b.value;
        });
        CHECK(checksum == checksum2);
      }
    }
  }
}

TEST_CASE("pair config validation") {
  CHECK_THROWS_AS(validate_pair_config({12, 157, 1000}), ConfigError);   // not squarefree
  CHECK_THROWS_AS(validate_pair_config({30, 3, 1000}), ConfigError);    // 5 > y
  CHECK_THROWS_AS(validate_pair_config({30, 157, 29}), ConfigError);    // cap < modulus
  CHECK_THROWS_AS(validate_pair_config({1, 157, 1000}), ConfigError);   // modulus < 2
  CHECK_NOTHROW(validate_pair_config({14, 13, 1000}));
}
