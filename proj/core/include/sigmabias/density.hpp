#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sigmabias/arith.hpp"
#include "sigmabias/enclosure.hpp"
#include "sigmabias/smooth.hpp"

namespace sigmabias {

// Shared precomputation for one (modulus, y) configuration.
//
// The density of S(a,b) = {n : Y(mn+1) = a, Y(mn) = b} factors as
//
//   dS(a,b) = m/(ab) * prod_{p|ab} (1 - 1/p) * prod_{p<=y, p∤ab} (1 - 2/p)
//
// and because m | b always, the primes dividing m never meet the (1 - 2/p)
// product.  base and mconst below carry the pair-independent parts, so each
// pair costs O(omega(ab)) instead of O(pi(y)).
class PairContext {
 public:
  PairContext(std::uint64_t modulus, std::uint64_t smooth_y);

  std::uint64_t modulus() const { return modulus_; }
  std::uint64_t smooth_y() const { return smooth_y_; }
  std::span<const std::uint64_t> primes() const { return primes_; }
  std::span<const std::uint64_t> modulus_primes() const { return modulus_primes_; }
  const BigRational& base() const { return base_; }          // prod_{p<=y, p∤m} (1-2/p)
  std::uint64_t mconst() const { return mconst_; }           // m * prod_{p|m} (1-1/p), an integer
  const BigInt& primorial() const { return primorial_; }     // P(y)

 private:
  std::uint64_t modulus_;
  std::uint64_t smooth_y_;
  std::vector<std::uint64_t> primes_;
  std::vector<std::uint64_t> modulus_primes_;
  BigRational base_;
  std::uint64_t mconst_;
  BigInt primorial_;
};

// Exact dS(a,b).  Returns 0 when modulus ∤ b or gcd(a,b) > 1 (the class is
// empty).  Throws std::invalid_argument if a or b is not y-smooth.
BigRational pair_density(const PairContext& ctx, const Factored& a, const Factored& b);

// One congruence class of the decomposition of S(a,b): either empty, or the
// full set {n >= 1 : n ≡ residue (mod modulus)}.  The modulus is abP/m, the
// true period in n; each class therefore has density m/(abP).
struct ClassProgression {
  bool empty = true;
  BigInt modulus = 0;
  BigInt residue = 0;
};

// The class S(a,b; t1, t2).  Requires 1 <= t1,t2 <= P and gcd(t1*t2, P) = 1
// (throws std::invalid_argument otherwise).  Empty iff P ∤ 1 - a*t1 + b*t2;
// otherwise solved constructively through a particular solution of
// a*x - b*y = 1.
ClassProgression class_progression(const PairContext& ctx, std::uint64_t a, std::uint64_t b,
                                   const BigInt& t1, const BigInt& t2);

struct LambdaParams {
  std::uint64_t zeta_terms = 100'000;  // r = 1 closed form
  std::uint64_t prime_cutoff = 10'000; // r >= 2 truncated Euler product
  unsigned exponent_cutoff = 30;       // r >= 2 per-factor truncation depth
};

// Enclosure of Lambda_k(r), the mean of (sigma_{-1})^r over a progression
// coprime to k.  For r = 1 this is the exact closed form
// zeta(2) * prod_{p|k} (1 - 1/p^2) with zeta(2) replaced by its enclosure.
// For r >= 2, a truncated Euler product with rigorous tail bounds (see
// lambda_euler_product).  k enters only through its distinct primes.
Enclosure lambda_constant(std::span<const std::uint64_t> k_primes, unsigned r,
                          const LambdaParams& params = {});
Enclosure lambda_constant(const Factored& k, unsigned r, const LambdaParams& params = {});

// The generic truncated-product route, valid for every r >= 1.  Each Euler
// factor is truncated at exponent_cutoff with the tail
// r * 2^(r-1) * p^(-2(A+1)) / (1 - p^(-2)) added to the upper endpoint; the
// primes above prime_cutoff contribute [1, 1/(1-T)] with
// T = r * 2^(r-1) * (1/2) * (1/Q + 1/(Q+1)).  For r = 1 this gives an
// independent cross-check of the closed form.
Enclosure lambda_euler_product(std::span<const std::uint64_t> k_primes, unsigned r,
                               const LambdaParams& params = {});

// Result for one pair: dS, whether the nontrivial dC bound applies, and a
// certified lower bound on dS(a,b) - dC(a,b).
struct PairOutcome {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  BigRational ds = 0;
  bool valid = false;
  BigRational saving = 0;
};

// With g = (sigma_{-1})^r: if g(b) > lambda.hi * g(a) (strict; ties are
// invalid), saving = dS * (g(b) - lambda.hi * g(a)) / (g(b) - g(a)), which is
// a valid lower bound on dS - dC for every Lambda in the enclosure.
// Otherwise saving = 0.  Requires lambda.lo > 1.
PairOutcome pair_saving(const PairContext& ctx, const Factored& a, const Factored& b,
                        const Enclosure& lambda, unsigned r);

enum class AccumMode {
  kAuto,   // exact when cap <= 1e5, fast otherwise
  kExact,  // every aggregate an exact rational
  kFast,   // per-pair savings floored onto a 2^-96 grid (certificate-safe)
};

std::string to_string(AccumMode mode);

struct BoundConfig {
  std::uint64_t modulus = 30;
  std::uint64_t smooth_y = 157;
  std::uint64_t cap = 1'000'000'000;
  unsigned exponent = 1;
  std::uint64_t zeta_terms = 100'000;
  AccumMode mode = AccumMode::kAuto;
  unsigned workers = 1;
  std::string checkpoint_path;          // empty: no checkpointing
  bool collect_pair_csv = false;        // requires cap <= 1e6
  std::uint64_t stop_after_b = 0;       // test hook: abort after this many
                                        // completed b (throws RunInterrupted)
  std::function<void(std::uint64_t done, std::uint64_t total)> progress;
};

struct BoundReport {
  // config echo
  std::uint64_t modulus = 0;
  std::uint64_t smooth_y = 0;
  std::uint64_t cap = 0;
  unsigned exponent = 1;
  std::uint64_t zeta_terms = 0;
  std::string mode;  // resolved: "exact" or "fast"
  unsigned workers = 1;
  // results
  std::uint64_t b_count = 0;
  std::uint64_t pair_count = 0;
  std::uint64_t valid_pair_count = 0;
  Enclosure lambda;
  BigRational total_saving = 0;
  BigRational upper_bound = 1;        // exactly 1 - total_saving
  std::string display;                // upper_bound rounded up at 7 decimals
  double wall_seconds = 0.0;
  std::string pair_csv;               // only if collect_pair_csv
};

// Thrown by the stop_after_b test hook once the checkpoint has been flushed.
class RunInterrupted : public std::runtime_error {
 public:
  RunInterrupted() : std::runtime_error("run interrupted by stop_after_b hook") {}
};

// The full certified computation: enumerate pairs, sum savings, return
// 1 - total as an upper bound on the density of C (= density of B).
// Deterministic for any worker count.  Resumes from checkpoint_path when the
// file exists and matches the config.
BoundReport density_upper_bound(const BoundConfig& config);

}  // namespace sigmabias
