#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sigmabias/rational.hpp"

namespace sigmabias {

inline constexpr std::uint64_t kDefaultBlockValues = 1ull << 22;
inline constexpr std::uint64_t kMaxBlockValues = 1ull << 27;
// sigma(n) < n * (1 + ln n) keeps 64-bit sums safe far beyond this; the
// guard documents the margin instead of relying on it silently.
inline constexpr std::uint64_t kSigmaSieveLimit = 1'000'000'000'000'000ull;

// Exact sigma(n) for n in [lo, hi], by segmented divisor accumulation
// (each divisor d <= sqrt(hi) contributes d and n/d to its multiples).
// Throws std::invalid_argument on an empty range, hi > kSigmaSieveLimit, or
// a block wider than max_values.
std::vector<std::uint64_t> sigma_block(std::uint64_t lo, std::uint64_t hi,
                                       std::uint64_t max_values = kMaxBlockValues);

struct SieveConfig {
  std::uint64_t modulus = 30;
  std::uint64_t limit = 1'000'000;   // compare n = 1..limit
  std::uint64_t block_values = kDefaultBlockValues;
  unsigned workers = 1;
  std::uint64_t gap_list_cap = 1'000;
  std::uint64_t csv_row_cap = 0;     // 0: no CSV collection
};

// Comparison census of sigma(mn+1) against sigma(mn), plus the gap cases
// 0 <= sigma(mn+1) - sigma(mn) < sigma(mn)/(mn) (members of B \ C).
struct SieveReport {
  std::uint64_t modulus = 0;
  std::uint64_t limit = 0;
  std::uint64_t block_values = 0;
  unsigned workers = 1;
  std::uint64_t count_less = 0;     // sigma(mn+1) <  sigma(mn)
  std::uint64_t count_equal = 0;
  std::uint64_t count_greater = 0;
  std::optional<std::uint64_t> first_less;
  std::optional<std::uint64_t> first_equal;
  std::optional<std::uint64_t> first_greater;
  std::uint64_t gap_count = 0;
  std::uint64_t gap_list_cap = 0;
  std::vector<std::uint64_t> gap_list;  // ascending, truncated at the cap
  double wall_seconds = 0.0;
  std::string csv;                  // "n,sigma_mn,sigma_mn1,sign" rows
};

// Exact per-n comparison streamed over blocks.  Result is independent of
// block size and worker count.  Throws std::invalid_argument for modulus < 2
// or limit < 1.
SieveReport compare_progressions(const SieveConfig& config);

// The n <= limit with 0 <= sigma(mn+1) - sigma(mn) < sigma(mn)/(mn),
// evaluated in integers: sigma(mn+1) >= sigma(mn) and
// mn * (sigma(mn+1) - sigma(mn)) < sigma(mn).
std::vector<std::uint64_t> bc_gap_scan(std::uint64_t modulus, std::uint64_t limit,
                                       std::uint64_t cap = ~0ull);

// (k/x) * sum of sigma_{-1}(n) over n <= x, n ≡ l (mod k), exact.
// Approaches Lambda_k(1) as x grows.  Throws std::invalid_argument when
// gcd(k, l) != 1 or x < k.
BigRational lambda_empirical(std::uint64_t k, std::uint64_t l, std::uint64_t x);

}  // namespace sigmabias
