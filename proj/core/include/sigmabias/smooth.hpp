#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "sigmabias/arith.hpp"

namespace sigmabias {

// One admissible pair of the partition: a, b y-smooth, gcd(a, b) = 1,
// modulus | b, a*b <= cap.
struct SmoothPair {
  Factored a;
  Factored b;
  friend bool operator==(const SmoothPair&, const SmoothPair&) = default;
};

// Visits every number <= limit whose prime factors all lie in `primes`
// (which must be ascending), by recursive exponent nesting.  Order is the
// recursion order, not ascending.  The factor span is only valid during the
// call.  Memory is O(|primes|) regardless of how many values are visited.
void for_each_smooth(std::span<const std::uint64_t> primes, std::uint64_t limit,
                     const std::function<void(std::uint64_t, std::span<const PrimePower>)>& visit);

std::uint64_t count_smooth(std::span<const std::uint64_t> primes, std::uint64_t limit);

// Exactly the y-smooth integers in [1, limit], ascending, factorizations
// attached.  Materializes the whole list; intended for ranges where that is
// affordable (use for_each_smooth to stream).
std::vector<Factored> smooth_numbers(std::uint64_t y, std::uint64_t limit);

struct PairEnumConfig {
  std::uint64_t modulus = 30;
  std::uint64_t smooth_y = 157;
  std::uint64_t cap = 1'000'000'000;
};

// Checks modulus >= 2, squarefree, all prime factors <= smooth_y (so that
// modulus | P(y)), and cap >= modulus.  Throws ConfigError otherwise.
// Returns the factorization of the modulus.
Factored validate_pair_config(const PairEnumConfig& config);

// Sorted values b = modulus * s <= cap, s smooth (equivalently: the y-smooth
// multiples of the modulus up to cap).
std::vector<std::uint64_t> admissible_b_values(const PairEnumConfig& config);

// Streams every admissible pair exactly once, b ascending then a ascending.
void for_each_pair(const PairEnumConfig& config,
                   const std::function<void(const SmoothPair&)>& visit);

// Materialized variant for small caps.
std::vector<SmoothPair> pair_stream(std::uint64_t modulus, std::uint64_t smooth_y,
                                    std::uint64_t cap);

}  // namespace sigmabias
