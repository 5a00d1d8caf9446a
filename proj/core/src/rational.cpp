#include "sigmabias/rational.hpp"

#include <stdexcept>

namespace sigmabias {

BigRational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::invalid_argument("rational: zero denominator");
  BigRational q;
  mpq_set_num(q.get_mpq_t(), num.get_mpz_t());
  mpq_set_den(q.get_mpq_t(), den.get_mpz_t());
  q.canonicalize();
  return q;
}

BigRational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("rational: empty string");
  BigRational q;
  if (mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0)
    throw std::invalid_argument("rational: malformed '" + text + "'");
  if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0)
    throw std::invalid_argument("rational: zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

std::string rational_string(const BigRational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string decimal_string(const BigRational& value, int digits, Rounding mode) {
  if (digits < 0) throw std::invalid_argument("decimal_string: negative digits");
  BigInt pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  BigInt scaled_num = value.get_num() * pow10;
  const BigInt& den = value.get_den();  // positive in canonical form
  BigInt q;
  switch (mode) {
    case Rounding::kDown:
      mpz_fdiv_q(q.get_mpz_t(), scaled_num.get_mpz_t(), den.get_mpz_t());
      break;
    case Rounding::kUp:
      mpz_cdiv_q(q.get_mpz_t(), scaled_num.get_mpz_t(), den.get_mpz_t());
      break;
    case Rounding::kNearest: {
      // round half away from zero: floor((2|n| + d) / 2d), sign restored
      BigInt two_abs = 2 * abs(scaled_num) + den;
      BigInt two_den = 2 * den;
      mpz_fdiv_q(q.get_mpz_t(), two_abs.get_mpz_t(), two_den.get_mpz_t());
      if (scaled_num < 0) q = -q;
      break;
    }
  }
  const bool negative = q < 0;
  BigInt mag = abs(q);
  BigInt ipart = mag / pow10;
  BigInt fpart = mag % pow10;
  std::string frac = fpart.get_str();
  if (static_cast<int>(frac.size()) < digits)
    frac.insert(0, static_cast<std::size_t>(digits) - frac.size(), '0');
  std::string out;
  if (negative) out += '-';
  out += ipart.get_str();
  if (digits > 0) {
    out += '.';
    out += frac;
  }
  return out;
}

BigRational pow_rational(const BigRational& base, unsigned exponent) {
  BigRational out;
  mpz_pow_ui(mpq_numref(out.get_mpq_t()), mpq_numref(base.get_mpq_t()), exponent);
  mpz_pow_ui(mpq_denref(out.get_mpq_t()), mpq_denref(base.get_mpq_t()), exponent);
  // base canonical => base^e canonical
  return out;
}

}  // namespace sigmabias
