#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sigmabias/rational.hpp"

namespace sigmabias {

struct PrimePower {
  std::uint64_t prime = 0;
  std::uint32_t exponent = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// A positive integer together with its full factorization.  factors are
// ordered by strictly increasing prime; value == product of prime^exponent;
// value == 1 iff factors is empty.
struct Factored {
  std::uint64_t value = 1;
  std::vector<PrimePower> factors;
  friend bool operator==(const Factored&, const Factored&) = default;
};

// Exactly the primes in [2, y], ascending.  Throws std::invalid_argument for
// y < 2 ("no primes").
std::vector<std::uint64_t> primes_up_to(std::uint64_t y);

inline constexpr std::uint64_t kDefaultSpfCacheBound = 10'000'000;

// Factorization backend: a smallest-prime-factor sieve below cache_bound,
// trial division by the sieved prime table above it.  Supports n up to
// cache_bound^2 (larger cofactors cannot be certified prime and throw).
// Immutable after construction; safe for concurrent use.
class Factorizer {
 public:
  explicit Factorizer(std::uint64_t cache_bound = kDefaultSpfCacheBound);

  Factored factorize(std::uint64_t n) const;

  std::uint64_t cache_bound() const { return cache_bound_; }
  std::span<const std::uint64_t> primes() const { return primes_; }

 private:
  std::uint64_t cache_bound_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint64_t> primes_;
};

// Shared default-sized instance, built on first use.
const Factorizer& default_factorizer();

// Sum of all positive divisors, as prod (p^(e+1) - 1) / (p - 1).
BigInt sigma(const Factored& n);

// sigma(n)/n in lowest terms; multiplicative, >= 1 with equality iff n == 1.
BigRational sigma_minus_one(const Factored& n);

// Largest y-smooth divisor: prod over p | n, p <= y of p^v_p(n).
std::uint64_t smooth_part(const Factored& n, std::uint64_t y);

bool is_smooth(const Factored& n, std::uint64_t y);

// Largest y-smooth divisor by direct trial division over the given prime
// table (primes must be exactly the primes <= y).  No factorization needed;
// used on ranges too big to factor one by one.
std::uint64_t smooth_part_by_trial(std::uint64_t n, std::span<const std::uint64_t> primes);

}  // namespace sigmabias
