#include "oracle.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <stdexcept>

namespace sigmabias::oracle {

namespace {

BigRational from_decimal_50(const char* digits_int, const char* digits_frac) {
  const std::string frac(digits_frac);
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
  BigInt value(std::string(digits_int) + frac);
  return make_rational(value, scale);
}

}  // namespace

BigRational zeta2_reference() {
  return from_decimal_50("1", "64493406684822643647241516664602518921894990120679");
}

BigRational pi_squared_reference() {
  return from_decimal_50("9", "86960440108935861883449099987615113531369940724079");
}

bool encloses_reference(const BigRational& lo, const BigRational& hi, const BigRational& ref) {
  const BigRational slack = make_rational(1, BigInt("100000000000000000000000000000000000000000000000"));
  return lo <= ref && ref + slack <= hi;
}

std::uint64_t sigma_by_divisors(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("sigma_by_divisors: n must be positive");
  std::uint64_t s = 0;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    s += d;
    if (d != n / d) s += n / d;
  }
  return s;
}

bool is_prime_by_trial(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> smooth_by_filter(std::uint64_t y, std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 1; n <= limit; ++n) {
    std::uint64_t rest = n;
    for (std::uint64_t p = 2; p <= rest && p <= y; ++p)
      while (rest % p == 0) rest /= p;
    if (rest == 1) out.push_back(n);
  }
  return out;
}

std::uint64_t count_smooth_by_heap(std::span<const std::uint64_t> primes, std::uint64_t limit) {
  using Entry = std::pair<std::uint64_t, std::uint32_t>;  // (value, min extension index)
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  heap.push({1, 0});
  std::uint64_t count = 0;
  std::uint64_t previous = 0;
  while (!heap.empty()) {
    const auto [v, i] = heap.top();
    heap.pop();
    if (v <= previous) throw std::logic_error("heap generation out of order");
    previous = v;
    ++count;
    for (std::uint32_t j = i; j < primes.size(); ++j) {
      if (v > limit / primes[j]) break;
      heap.push({v * primes[j], j});
    }
  }
  return count;
}

BigRational density_by_period_count(std::uint64_t m, std::uint64_t y, std::uint64_t a,
                                    std::uint64_t b) {
  const std::vector<std::uint64_t> primes = primes_up_to(y);
  std::uint64_t period_u = 1;
  for (const std::uint64_t p : primes) period_u *= p;
  const BigInt period = BigInt(static_cast<unsigned long>(period_u)) *
                        static_cast<unsigned long>(a) * static_cast<unsigned long>(b);
  if (period > 100'000'000) throw std::invalid_argument("period too large for the oracle");
  const std::uint64_t abP = static_cast<std::uint64_t>(period.get_ui());

  // Y(c) = a  <=>  a | c and c/a has no prime factor <= y
  const auto rough = [&](std::uint64_t q) {
    for (const std::uint64_t p : primes)
      if (q % p == 0) return false;
    return true;
  };
  std::uint64_t count = 0;
  std::uint64_t c = m + 1;  // c = mn + 1
  for (std::uint64_t n = 1; n <= abP; ++n, c += m) {
    if (c % a == 0 && (c - 1) % b == 0 && rough(c / a) && rough((c - 1) / b)) ++count;
  }
  return make_rational(count, period);
}

BigRational sigma_minus_one_sum_by_hyperbola(std::uint64_t x) {
  // sum_{d<=x} floor(x/d) / d, summed exactly by divide and conquer
  struct Raw {
    BigInt num, den;
  };
  const std::function<Raw(std::uint64_t, std::uint64_t)> rec = [&](std::uint64_t lo,
                                                                   std::uint64_t hi) -> Raw {
    if (lo == hi)
      return {BigInt(static_cast<unsigned long>(x / lo)), BigInt(static_cast<unsigned long>(lo))};
    const std::uint64_t mid = lo + (hi - lo) / 2;
    Raw l = rec(lo, mid);
    Raw r = rec(mid + 1, hi);
    return {l.num * r.den + r.num * l.den, l.den * r.den};
  };
  Raw s = rec(1, x);
  return make_rational(s.num, s.den);
}

}  // namespace sigmabias::oracle
