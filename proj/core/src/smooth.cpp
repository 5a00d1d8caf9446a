#include "sigmabias/smooth.hpp"

#include <algorithm>
#include <numeric>

#include "sigmabias/errors.hpp"

namespace sigmabias {

namespace {

// Recursive exponent nesting over the prime table.  Factor stack is shared
// across the recursion; memory stays O(|primes|) no matter how many values
// are produced.
struct SmoothWalker {
  std::span<const std::uint64_t> primes;
  std::uint64_t limit;
  const std::function<void(std::uint64_t, std::span<const PrimePower>)>& visit;
  std::vector<PrimePower> stack;

  void run() {
    stack.clear();
    stack.reserve(64);
    descend(0, 1);
  }

  void descend(std::size_t from, std::uint64_t value) {
    visit(value, std::span<const PrimePower>(stack));
    for (std::size_t i = from; i < primes.size(); ++i) {
      const std::uint64_t p = primes[i];
      if (value > limit / p) break;  // primes ascending: later ones break too
      std::uint64_t v = value * p;
      stack.push_back({p, 1});
      while (true) {
        descend(i + 1, v);
        if (v > limit / p) break;
        v *= p;
        ++stack.back().exponent;
      }
      stack.pop_back();
    }
  }
};

}  // namespace

void for_each_smooth(std::span<const std::uint64_t> primes, std::uint64_t limit,
                     const std::function<void(std::uint64_t, std::span<const PrimePower>)>& visit) {
  if (limit == 0) return;
  SmoothWalker walker{primes, limit, visit, {}};
  walker.run();
}

std::uint64_t count_smooth(std::span<const std::uint64_t> primes, std::uint64_t limit) {
  std::uint64_t count = 0;
  for_each_smooth(primes, limit, [&](std::uint64_t, std::span<const PrimePower>) { ++count; });
  return count;
}

std::vector<Factored> smooth_numbers(std::uint64_t y, std::uint64_t limit) {
  if (limit == 0) throw std::invalid_argument("smooth_numbers: limit must be positive");
  const std::vector<std::uint64_t> primes = primes_up_to(y);
  std::vector<Factored> out;
  for_each_smooth(primes, limit, [&](std::uint64_t value, std::span<const PrimePower> factors) {
    out.push_back(Factored{value, {factors.begin(), factors.end()}});
  });
  std::sort(out.begin(), out.end(),
            [](const Factored& x, const Factored& y2) { return x.value < y2.value; });
  return out;
}

Factored validate_pair_config(const PairEnumConfig& config) {
  if (config.modulus < 2) throw ConfigError("modulus must be at least 2");
  if (config.smooth_y < 2) throw ConfigError("smoothness bound must be at least 2");
  if (config.cap < config.modulus) throw ConfigError("cap must be at least the modulus");
  Factored m = default_factorizer().factorize(config.modulus);
  for (const auto& [p, e] : m.factors) {
    if (e > 1) throw ConfigError("modulus must be squarefree");
    if (p > config.smooth_y)
      throw ConfigError("every prime factor of the modulus must be <= the smoothness bound");
  }
  return m;
}

std::vector<std::uint64_t> admissible_b_values(const PairEnumConfig& config) {
  validate_pair_config(config);
  const std::vector<std::uint64_t> primes = primes_up_to(config.smooth_y);
  std::vector<std::uint64_t> svals;
  for_each_smooth(primes, config.cap / config.modulus,
                  [&](std::uint64_t s, std::span<const PrimePower>) { svals.push_back(s); });
  std::sort(svals.begin(), svals.end());
  for (auto& s : svals) s *= config.modulus;
  return svals;
}

void for_each_pair(const PairEnumConfig& config,
                   const std::function<void(const SmoothPair&)>& visit) {
  validate_pair_config(config);
  const std::vector<std::uint64_t> primes = primes_up_to(config.smooth_y);
  const std::vector<std::uint64_t> bs = admissible_b_values(config);
  for (const std::uint64_t b : bs) {
    // factor b over the prime table (b is smooth by construction)
    Factored bfac;
    bfac.value = b;
    {
      std::uint64_t rest = b;
      for (const std::uint64_t p : primes) {
        if (rest == 1) break;
        if (rest % p != 0) continue;
        std::uint32_t e = 0;
        while (rest % p == 0) {
          rest /= p;
          ++e;
        }
        bfac.factors.push_back({p, e});
      }
    }
    std::vector<std::uint64_t> allowed;
    allowed.reserve(primes.size());
    for (const std::uint64_t p : primes)
      if (b % p != 0) allowed.push_back(p);
    std::vector<Factored> as;
    for_each_smooth(allowed, config.cap / b,
                    [&](std::uint64_t a, std::span<const PrimePower> factors) {
                      as.push_back(Factored{a, {factors.begin(), factors.end()}});
                    });
    std::sort(as.begin(), as.end(),
              [](const Factored& x, const Factored& y2) { return x.value < y2.value; });
    for (auto& a : as) visit(SmoothPair{std::move(a), bfac});
  }
}

std::vector<SmoothPair> pair_stream(std::uint64_t modulus, std::uint64_t smooth_y,
                                    std::uint64_t cap) {
  std::vector<SmoothPair> out;
  for_each_pair({modulus, smooth_y, cap},
                [&](const SmoothPair& pair) { out.push_back(pair); });
  return out;
}

}  // namespace sigmabias
