#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace monoembed {

using Rational = mpq_class;
using BigInt = mpz_class;

/// num/den in canonical form.
inline Rational ratio(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("ratio: zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "a/b", "a", or a terminating decimal such as "0.25".
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    if (digits.empty() || digits == "-") throw std::invalid_argument("bad rational: " + s);
    BigInt num;
    if (num.set_str(digits, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    BigInt den = 1;
    for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

/// Always "num/den", including integers ("1/1").
inline std::string to_fraction_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational pow2_inverse(unsigned k) {
  BigInt den = 1;
  den <<= k;
  return Rational(BigInt(1), den);
}

inline Rational pow(const Rational& base, unsigned e) {
  Rational out = 1;
  Rational b = base;
  while (e > 0) {
    if (e & 1u) out *= b;
    b *= b;
    e >>= 1;
  }
  return out;
}

inline BigInt binomial_big(unsigned n, unsigned k) {
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

inline BigInt factorial_big(unsigned n) {
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

inline double to_double(const Rational& q) { return q.get_d(); }

/// Total variation distance between two distributions on the same finite support.
inline Rational total_variation(const std::vector<Rational>& p, const std::vector<Rational>& q) {
  if (p.size() != q.size()) throw std::invalid_argument("total_variation: size mismatch");
  Rational sum = 0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += abs(p[i] - q[i]);
  return sum / 2;
}

inline bool fits_int64(const BigInt& v) { return mpz_fits_slong_p(v.get_mpz_t()) != 0; }

}  // namespace monoembed
