#include <doctest.h>

#include <numeric>
#include <random>

#include "oracle.hpp"
#include "sigmabias/arith.hpp"

using namespace sigmabias;

TEST_CASE("primes_up_to basic tables") {
  CHECK(primes_up_to(5) == std::vector<std::uint64_t>{2, 3, 5});
  CHECK(primes_up_to(2) == std::vector<std::uint64_t>{2});
  const auto p157 = primes_up_to(157);
  CHECK(p157.size() == 37);
  CHECK(p157.back() == 157);
  for (const auto p : p157) CHECK(oracle::is_prime_by_trial(p));
  CHECK_THROWS_AS(primes_up_to(1), std::invalid_argument);
  CHECK_THROWS_AS(primes_up_to(0), std::invalid_argument);
}

TEST_CASE("factorize spec examples") {
  const Factorizer& f = default_factorizer();
  CHECK(f.factorize(1).factors.empty());
  CHECK(f.factorize(30).factors ==
        std::vector<PrimePower>{{2, 1}, {3, 1}, {5, 1}});
  CHECK(f.factorize(44100).factors ==
        std::vector<PrimePower>{{2, 2}, {3, 2}, {5, 2}, {7, 2}});
  CHECK_THROWS_AS(f.factorize(0), std::invalid_argument);
}

TEST_CASE("factorize reconstructs and certifies primes, both paths") {
  const Factorizer small(100);  // forces the trial-division path early
  std::mt19937_64 rng(20240517);
  std::uniform_int_distribution<std::uint64_t> dist(1, 1'000'000);
  for (int i = 0; i < 300; ++i) {
    const std::uint64_t n = dist(rng);
    for (const Factorizer* fz : {&default_factorizer(), &small}) {
      const Factored fac = fz->factorize(n);
      std::uint64_t product = 1;
      std::uint64_t last_prime = 1;
      for (const auto& [p, e] : fac.factors) {
        CHECK(p > last_prime);
        last_prime = p;
        CHECK(oracle::is_prime_by_trial(p));
        CHECK(e >= 1);
        for (std::uint32_t j = 0; j < e; ++j) product *= p;
      }
      CHECK(product == n);
    }
  }
  // cofactors above cache_bound^2 cannot be certified
  CHECK_THROWS_AS(small.factorize(1'000'003ull * 1'000'033ull), std::domain_error);
}

TEST_CASE("sigma examples and divisor-enumeration oracle") {
  const Factorizer& f = default_factorizer();
  CHECK(sigma(f.factorize(1)) == 1);
  CHECK(sigma(f.factorize(30)) == 72);
  CHECK(sigma(f.factorize(31)) == 32);
  CHECK(oracle::sigma_by_divisors(30) == 72);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint64_t> dist(1, 100'000);
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t n = dist(rng);
    CHECK(sigma(f.factorize(n)) == oracle::sigma_by_divisors(n));
  }
}

TEST_CASE("sigma and sigma_minus_one are multiplicative over coprime pairs") {
  const Factorizer& f = default_factorizer();
  std::mt19937_64 rng(20240518);
  std::uniform_int_distribution<std::uint64_t> dist(1, 1'000'000);
  int found = 0;
  while (found < 200) {
    const std::uint64_t m = dist(rng), n = dist(rng);
    if (std::gcd(m, n) != 1 || m > (1ull << 40) / n) continue;
    ++found;
    const Factored fm = f.factorize(m), fn = f.factorize(n), fmn = f.factorize(m * n);
    CHECK(sigma(fmn) == sigma(fm) * sigma(fn));
    CHECK(sigma_minus_one(fmn) == sigma_minus_one(fm) * sigma_minus_one(fn));
  }
}

TEST_CASE("sigma_minus_one examples and n <= 1e4 oracle sweep") {
  const Factorizer& f = default_factorizer();
  CHECK(sigma_minus_one(f.factorize(1)) == BigRational(1));
  CHECK(sigma_minus_one(f.factorize(30)) == make_rational(12, 5));
  // sigma_{-1}(p) - 1 = 1/p
  CHECK(sigma_minus_one(f.factorize(7)) - 1 == make_rational(1, 7));
  for (std::uint64_t n = 1; n <= 10'000; ++n) {
    const BigRational v = sigma_minus_one(f.factorize(n));
    CHECK(v == make_rational(oracle::sigma_by_divisors(n), n));
    CHECK(v >= 1);
    CHECK((v == 1) == (n == 1));
  }
}

TEST_CASE("smooth_part examples and division property") {
  const Factorizer& f = default_factorizer();
  CHECK(smooth_part(f.factorize(1), 5) == 1);
  CHECK(smooth_part(f.factorize(31), 5) == 1);
  CHECK(smooth_part(f.factorize(60), 5) == 60);
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::uint64_t> dist(1, 1'000'000);
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t n = dist(rng);
    const Factored fac = f.factorize(n);
    for (const std::uint64_t y : {2ull, 3ull, 5ull, 13ull, 157ull}) {
      const std::uint64_t part = smooth_part(fac, y);
      CHECK(n % part == 0);
      for (const auto& [p, e] : f.factorize(n / part).factors) CHECK(p > y);
      CHECK(part == smooth_part_by_trial(n, primes_up_to(y)));
    }
  }
}
