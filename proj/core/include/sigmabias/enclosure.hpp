#pragma once

#include <cstdint>

#include "sigmabias/rational.hpp"

namespace sigmabias {

// A pair of exact rationals [lo, hi] guaranteed to contain a real constant.
// All operations that consume an Enclosure must round so that the final
// certificate only loosens: that discipline lives at the call sites.
struct Enclosure {
  BigRational lo;
  BigRational hi;

  BigRational width() const { return hi - lo; }
  BigRational midpoint() const { return (lo + hi) / 2; }
  bool contains(const BigRational& x) const { return lo <= x && x <= hi; }
};

// [S_N + 1/(N+1), S_N + 1/N] where S_N = sum_{n<=N} 1/n^2.  Contains
// zeta(2) = pi^2/6 by the integral test; width = 1/(N(N+1)).
// Throws std::invalid_argument for terms == 0.
Enclosure zeta2_enclosure(std::uint64_t terms);

}  // namespace sigmabias
