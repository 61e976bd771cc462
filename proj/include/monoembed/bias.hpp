#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "embedding.hpp"
#include "rational.hpp"

namespace monoembed {

/// p' = 2^{-a_1} * prod_{i>=2} (1 - 2^{-i})^{a_i}, or its complement when p > 1/2.
struct BiasApproximation {
  Rational p;
  Rational p_prime;
  Rational q;            // approximation of min(p, 1-p)
  std::vector<int> a;    // a[0] = a_1, a[i-1] = a_i
  int s = 0;
  bool complemented = false;
  EmbeddingPtr embedding;
};

/// Smallest s >= 1 with 2^s >= (n/delta)^10.
inline int bias_precision(const Rational& delta, std::uint64_t n) {
  if (delta <= 0 || delta > 1) throw std::invalid_argument("approx_bias: delta must lie in (0,1]");
  if (n == 0) throw std::invalid_argument("approx_bias: n must be positive");
  const Rational x = pow(Rational(BigInt(static_cast<unsigned long>(n))) / delta, 10);
  int s = 1;
  BigInt lhs = 2;
  lhs *= x.get_den();
  while (lhs < x.get_num()) {
    lhs <<= 1;
    ++s;
  }
  return s;
}

/// q(a) including the leading 2^{-a_1} factor.
inline Rational bias_product(const std::vector<int>& a) {
  Rational q = a.empty() ? Rational(1) : pow2_inverse(static_cast<unsigned>(a[0]));
  for (std::size_t i = 1; i < a.size(); ++i) q *= pow(1 - pow2_inverse(static_cast<unsigned>(i + 1)), static_cast<unsigned>(a[i]));
  return q;
}

/// Embedding for mu_{q(a)}: and(a_1) times a_i copies of the complemented and(i).
inline EmbeddingPtr bias_embedding(const std::vector<int>& a, bool complemented) {
  if (a.empty() || a[0] < 1) throw std::invalid_argument("bias_embedding: a_1 must be positive");
  EmbeddingPtr e = and_embedding(a[0]);
  for (std::size_t i = 1; i < a.size(); ++i)
    for (int c = 0; c < a[i]; ++c) e = product_embedding(e, complement_embedding(and_embedding(static_cast<int>(i + 1))));
  return complemented ? complement_embedding(e) : e;
}

/// Greedy digit expansion of p (reduced to p <= 1/2) with precision 2^{-s}; no embedding built.
inline BiasApproximation approx_bias_digits(const Rational& p, const Rational& delta, std::uint64_t n) {
  if (p <= 0 || p >= 1) throw std::invalid_argument("approx_bias: p must lie in (0,1)");
  BiasApproximation out;
  out.p = p;
  out.s = bias_precision(delta, n);
  out.complemented = p > Rational(1, 2);
  const Rational target = out.complemented ? 1 - p : p;
  int k = 1;
  while (k < out.s && pow2_inverse(static_cast<unsigned>(k + 1)) >= target) ++k;
  out.a.assign(static_cast<std::size_t>(out.s), 0);
  out.a[0] = k;
  Rational q = pow2_inverse(static_cast<unsigned>(k));
  if (k < out.s) {
    for (int i = 2; i <= out.s; ++i) {
      const Rational f = 1 - pow2_inverse(static_cast<unsigned>(i));
      int ai = 0;
      while (q * f >= target) {
        q *= f;
        ++ai;
      }
      out.a[static_cast<std::size_t>(i - 1)] = ai;
    }
  }
  out.q = q;
  out.p_prime = out.complemented ? 1 - q : q;
  return out;
}

inline BiasApproximation approx_bias(const Rational& p, const Rational& delta, std::uint64_t n) {
  auto out = approx_bias_digits(p, delta, n);
  out.embedding = bias_embedding(out.a, out.complemented);
  return out;
}

}  // namespace monoembed
