#include "sigmabias/sieve.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include "sigmabias/parallel.hpp"

namespace sigmabias {

namespace {

using u128 = unsigned __int128;

std::uint64_t isqrt(std::uint64_t n) {
  std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// sigma over [lo, hi] into out (resized).  Divisor pairs (d, n/d) with
// d <= sqrt(n) are accumulated from the d side, so the pass costs
// O(H log sqrt(hi) + sqrt(hi)) instead of touching every d <= hi.
void sigma_fill(std::uint64_t lo, std::uint64_t hi, std::vector<std::uint64_t>& out) {
  const std::size_t width = static_cast<std::size_t>(hi - lo + 1);
  out.assign(width, 0);
  const std::uint64_t root = isqrt(hi);
  for (std::uint64_t d = 1; d <= root; ++d) {
    std::uint64_t k = std::max(d, (lo + d - 1) / d);
    for (std::uint64_t n = d * k; n <= hi; n += d, ++k) {
      // d <= k here, so each divisor pair of n is seen exactly once
      out[n - lo] += (k == d) ? d : d + k;
    }
  }
}

}  // namespace

std::vector<std::uint64_t> sigma_block(std::uint64_t lo, std::uint64_t hi,
                                       std::uint64_t max_values) {
  if (lo < 1 || hi < lo) throw std::invalid_argument("sigma_block: need 1 <= lo <= hi");
  if (hi > kSigmaSieveLimit)
    throw std::invalid_argument("sigma_block: range exceeds the 64-bit safety guard");
  if (hi - lo + 1 > max_values)
    throw std::invalid_argument("sigma_block: block too large for the memory budget");
  std::vector<std::uint64_t> out;
  sigma_fill(lo, hi, out);
  return out;
}

namespace {

struct BlockStats {
  std::uint64_t less = 0, equal = 0, greater = 0;
  std::optional<std::uint64_t> first_less, first_equal, first_greater;
  std::vector<std::uint64_t> gaps;
  std::string csv;
};

}  // namespace

SieveReport compare_progressions(const SieveConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  if (config.modulus < 2) throw std::invalid_argument("compare_progressions: modulus must be >= 2");
  if (config.limit < 1) throw std::invalid_argument("compare_progressions: limit must be >= 1");
  if (config.block_values < config.modulus + 2 || config.block_values > kMaxBlockValues)
    throw std::invalid_argument("compare_progressions: bad block size");
  const std::uint64_t m = config.modulus;
  const std::uint64_t N = config.limit;
  if (m > kSigmaSieveLimit / N)
    throw std::invalid_argument("compare_progressions: m*limit exceeds the sieve guard");

  // blocks in n-space sized so each sieve segment holds block_values entries
  const std::uint64_t n_per_block = std::max<std::uint64_t>(1, (config.block_values - 2) / m);
  const std::size_t block_count = static_cast<std::size_t>((N + n_per_block - 1) / n_per_block);
  std::vector<BlockStats> stats(block_count);

  parallel_for_dynamic(block_count, config.workers, [&](std::size_t bi) {
    const std::uint64_t n0 = 1 + bi * n_per_block;
    const std::uint64_t n1 = std::min(N, n0 + n_per_block - 1);
    thread_local std::vector<std::uint64_t> seg;
    const std::uint64_t lo = m * n0;
    const std::uint64_t hi = m * n1 + 1;
    sigma_fill(lo, hi, seg);
    BlockStats& st = stats[bi];
    std::ostringstream csv;
    for (std::uint64_t n = n0; n <= n1; ++n) {
      const std::uint64_t s0 = seg[m * n - lo];
      const std::uint64_t s1 = seg[m * n + 1 - lo];
      char sign;
      if (s1 < s0) {
        ++st.less;
        if (!st.first_less) st.first_less = n;
        sign = '<';
      } else if (s1 == s0) {
        ++st.equal;
        if (!st.first_equal) st.first_equal = n;
        sign = '=';
      } else {
        ++st.greater;
        if (!st.first_greater) st.first_greater = n;
        sign = '>';
      }
      // gap case: 0 <= s1 - s0 < s0/(mn), in integers
      if (s1 >= s0 && static_cast<u128>(m) * n * (s1 - s0) < static_cast<u128>(s0))
        st.gaps.push_back(n);
      if (config.csv_row_cap > 0)
        csv << n << ',' << s0 << ',' << s1 << ',' << sign << '\n';
    }
    if (config.csv_row_cap > 0) st.csv = csv.str();
  });

  SieveReport report;
  report.modulus = m;
  report.limit = N;
  report.block_values = config.block_values;
  report.workers = config.workers;
  report.gap_list_cap = config.gap_list_cap;
  std::uint64_t csv_rows = 0;
  if (config.csv_row_cap > 0) report.csv = "n,sigma_mn,sigma_mn1,sign\n";
  for (const BlockStats& st : stats) {
    report.count_less += st.less;
    report.count_equal += st.equal;
    report.count_greater += st.greater;
    if (!report.first_less && st.first_less) report.first_less = st.first_less;
    if (!report.first_equal && st.first_equal) report.first_equal = st.first_equal;
    if (!report.first_greater && st.first_greater) report.first_greater = st.first_greater;
    report.gap_count += st.gaps.size();
    for (const std::uint64_t n : st.gaps)
      if (report.gap_list.size() < config.gap_list_cap) report.gap_list.push_back(n);
    if (config.csv_row_cap > 0 && csv_rows < config.csv_row_cap) {
      // append whole-block rows until the cap; trim inside the block if needed
      std::istringstream rows(st.csv);
      std::string row;
      while (csv_rows < config.csv_row_cap && std::getline(rows, row)) {
        report.csv += row;
        report.csv += '\n';
        ++csv_rows;
      }
    }
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<std::uint64_t> bc_gap_scan(std::uint64_t modulus, std::uint64_t limit,
                                       std::uint64_t cap) {
  SieveConfig config;
  config.modulus = modulus;
  config.limit = limit;
  config.gap_list_cap = cap;
  return compare_progressions(config).gap_list;
}

namespace {

// divide-and-conquer exact sum of terms[i] = num_i/den_i; one gcd at the root
struct RawSum {
  BigInt num, den;
};

RawSum tree_sum(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& terms,
                std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) {
    return {BigInt(static_cast<unsigned long>(terms[lo].first)),
            BigInt(static_cast<unsigned long>(terms[lo].second))};
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  RawSum left = tree_sum(terms, lo, mid);
  RawSum right = tree_sum(terms, mid, hi);
  return {left.num * right.den + right.num * left.den, left.den * right.den};
}

}  // namespace

BigRational lambda_empirical(std::uint64_t k, std::uint64_t l, std::uint64_t x) {
  if (k < 1 || l < 1) throw std::invalid_argument("lambda_empirical: k, l must be positive");
  if (std::gcd(k, l) != 1) throw std::invalid_argument("lambda_empirical: gcd(k, l) must be 1");
  if (x < k) throw std::invalid_argument("lambda_empirical: x must be at least k");

  std::vector<std::pair<std::uint64_t, std::uint64_t>> terms;  // (sigma(n), n)
  terms.reserve(static_cast<std::size_t>(x / k + 1));
  std::vector<std::uint64_t> seg;
  const std::uint64_t block = kDefaultBlockValues;
  for (std::uint64_t lo = 1; lo <= x; lo += block) {
    const std::uint64_t hi = std::min(x, lo + block - 1);
    sigma_fill(lo, hi, seg);
    std::uint64_t n = l >= lo ? l : lo + ((k - (lo - l) % k) % k);
    for (; n <= hi; n += k) terms.emplace_back(seg[n - lo], n);
  }
  if (terms.empty()) throw std::invalid_argument("lambda_empirical: no terms below x");
  RawSum sum = tree_sum(terms, 0, terms.size());
  // (k/x) * sum
  return make_rational(sum.num * static_cast<unsigned long>(k),
                       sum.den * static_cast<unsigned long>(x));
}

}  // namespace sigmabias
