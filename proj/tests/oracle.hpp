// Test-only oracles: independent routes to the quantities the library
// computes.  Everything here is deliberately brute force.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sigmabias/arith.hpp"
#include "sigmabias/rational.hpp"

namespace sigmabias::oracle {

// 50-digit truncations; the true constant lies in [ref, ref + 1e-47].
BigRational zeta2_reference();
BigRational pi_squared_reference();
// true_value in [lo_slack, hi_slack] for containment checks
bool encloses_reference(const BigRational& lo, const BigRational& hi, const BigRational& ref);

// sigma(n) by direct divisor enumeration, O(sqrt n).
std::uint64_t sigma_by_divisors(std::uint64_t n);

bool is_prime_by_trial(std::uint64_t n);

// y-smooth numbers <= limit by per-n largest-prime-factor test.
std::vector<std::uint64_t> smooth_by_filter(std::uint64_t y, std::uint64_t limit);

// Ascending smooth generation through a (value, min-prime-index) heap;
// independent of the recursive exponent nesting in the library.
std::uint64_t count_smooth_by_heap(std::span<const std::uint64_t> primes, std::uint64_t limit);

// |{n in [1, abP] : Y(mn+1) = a, Y(mn) = b}| / (abP) by exhaustive scan of
// one full period.
BigRational density_by_period_count(std::uint64_t m, std::uint64_t y, std::uint64_t a,
                                    std::uint64_t b);

// sum_{n<=x} sigma_{-1}(n) = sum_{d<=x} floor(x/d)/d, exact.
BigRational sigma_minus_one_sum_by_hyperbola(std::uint64_t x);

}  // namespace sigmabias::oracle
