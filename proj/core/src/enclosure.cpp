#include "sigmabias/enclosure.hpp"

#include <stdexcept>

namespace sigmabias {

namespace {

// Unreduced fraction pair used by the divide-and-conquer summation: merging
// without per-step gcd keeps the tree fast; one canonicalization at the root.
struct RawFraction {
  BigInt num;
  BigInt den;
};

// sum of 1/n^2 over n in [lo, hi]
RawFraction inverse_square_sum(std::uint64_t lo, std::uint64_t hi) {
  if (lo == hi) {
    BigInt d;
    mpz_ui_pow_ui(d.get_mpz_t(), static_cast<unsigned long>(lo), 2);
    return {BigInt(1), d};
  }
  const std::uint64_t mid = lo + (hi - lo) / 2;
  RawFraction left = inverse_square_sum(lo, mid);
  RawFraction right = inverse_square_sum(mid + 1, hi);
  return {left.num * right.den + right.num * left.den, left.den * right.den};
}

}  // namespace

Enclosure zeta2_enclosure(std::uint64_t terms) {
  if (terms == 0) throw std::invalid_argument("zeta2_enclosure: need at least one term");
  RawFraction s = inverse_square_sum(1, terms);
  BigRational partial = make_rational(s.num, s.den);
  // integral test: 1/(N+1) < sum_{n>N} 1/n^2 < 1/N
  BigRational lo = partial + make_rational(1, BigInt(terms) + 1);
  BigRational hi = partial + make_rational(1, BigInt(terms));
  return {lo, hi};
}

}  // namespace sigmabias
