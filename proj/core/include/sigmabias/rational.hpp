#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace sigmabias {

// Exact arbitrary-precision arithmetic.  Every density, every sigma_{-1}
// value and every certified bound in this project is carried as a GMP
// rational in canonical form (lowest terms, positive denominator).
using BigInt = mpz_class;
using BigRational = mpq_class;

// num/den reduced to canonical form.  Throws std::invalid_argument on den == 0.
BigRational make_rational(const BigInt& num, const BigInt& den);

// Parses "num/den" or "num" (den defaults to 1).  Throws std::invalid_argument
// on malformed input or zero denominator.
BigRational parse_rational(const std::string& text);

// Always "num/den", even for integers ("3/1"): keeps report files uniform.
std::string rational_string(const BigRational& value);

enum class Rounding {
  kDown,     // toward -infinity
  kUp,       // toward +infinity
  kNearest,  // half away from zero
};

// Fixed-point decimal rendering with explicit rounding direction, e.g.
// decimal_string(4/15, 7, Rounding::kUp) == "0.2666667".
std::string decimal_string(const BigRational& value, int digits, Rounding mode);

BigRational pow_rational(const BigRational& base, unsigned exponent);

}  // namespace sigmabias
