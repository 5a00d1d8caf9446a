#include "sigmabias/arith.hpp"

#include <algorithm>
#include <stdexcept>

namespace sigmabias {

std::vector<std::uint64_t> primes_up_to(std::uint64_t y) {
  if (y < 2) throw std::invalid_argument("primes_up_to: no primes below 2");
  if (y > 100'000'000) throw std::invalid_argument("primes_up_to: bound too large");
  std::vector<bool> composite(y + 1, false);
  std::vector<std::uint64_t> primes;
  for (std::uint64_t i = 2; i <= y; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::uint64_t j = i * i; j <= y; j += i) composite[j] = true;
  }
  return primes;
}

Factorizer::Factorizer(std::uint64_t cache_bound) : cache_bound_(cache_bound) {
  if (cache_bound_ < 2) cache_bound_ = 2;
  if (cache_bound_ > (1ull << 32)) throw std::invalid_argument("Factorizer: cache bound too large");
  spf_.assign(cache_bound_ + 1, 0);
  for (std::uint64_t i = 2; i <= cache_bound_; ++i) {
    if (spf_[i] != 0) continue;
    primes_.push_back(i);
    for (std::uint64_t j = i; j <= cache_bound_; j += i)
      if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
  }
}

Factored Factorizer::factorize(std::uint64_t n) const {
  if (n == 0) throw std::invalid_argument("factorize: n must be positive");
  Factored out;
  out.value = n;
  if (n <= cache_bound_) {
    while (n > 1) {
      const std::uint64_t p = spf_[n];
      std::uint32_t e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.factors.push_back({p, e});
    }
    return out;
  }
  for (const std::uint64_t p : primes_) {
    if (p * p > n) break;
    if (n % p != 0) continue;
    std::uint32_t e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.factors.push_back({p, e});
  }
  if (n > 1) {
    // no factor <= min(sqrt(n), cache bound) remains; certify primality
    if (n > cache_bound_ * cache_bound_)
      throw std::domain_error("factorize: cofactor exceeds certified range (raise the cache bound)");
    out.factors.push_back({n, 1});
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const PrimePower& x, const PrimePower& y) { return x.prime < y.prime; });
  return out;
}

const Factorizer& default_factorizer() {
  static const Factorizer instance(kDefaultSpfCacheBound);
  return instance;
}

BigInt sigma(const Factored& n) {
  BigInt result = 1;
  for (const auto& [p, e] : n.factors) {
    BigInt pe;
    mpz_ui_pow_ui(pe.get_mpz_t(), static_cast<unsigned long>(p), e + 1);
    result *= (pe - 1) / (BigInt(p) - 1);
  }
  return result;
}

BigRational sigma_minus_one(const Factored& n) {
  return make_rational(sigma(n), BigInt(n.value));
}

std::uint64_t smooth_part(const Factored& n, std::uint64_t y) {
  std::uint64_t part = 1;
  for (const auto& [p, e] : n.factors) {
    if (p > y) break;
    for (std::uint32_t i = 0; i < e; ++i) part *= p;
  }
  return part;
}

bool is_smooth(const Factored& n, std::uint64_t y) {
  return n.factors.empty() || n.factors.back().prime <= y;
}

std::uint64_t smooth_part_by_trial(std::uint64_t n, std::span<const std::uint64_t> primes) {
  if (n == 0) throw std::invalid_argument("smooth_part_by_trial: n must be positive");
  std::uint64_t part = 1;
  for (const std::uint64_t p : primes) {
    while (n % p == 0) {
      n /= p;
      part *= p;
    }
    if (n == 1) break;
  }
  return part;
}

}  // namespace sigmabias
