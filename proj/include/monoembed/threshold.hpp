#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "embedding.hpp"
#include "rational.hpp"

namespace monoembed {

/// T(x) = #{j : |x| > t_j} on {0,1}^r.
struct ThresholdMap {
  int r = 0;
  std::vector<int> t;

  int m() const noexcept { return static_cast<int>(t.size()) + 1; }
  int operator()(int weight) const noexcept {
    int a = 0;
    for (int v : t) a += weight > v ? 1 : 0;
    return a;
  }

  /// Distribution of T(U).
  std::vector<Rational> pushforward() const {
    std::vector<Rational> out(static_cast<std::size_t>(m()), 0);
    const Rational unit = pow2_inverse(static_cast<unsigned>(r));
    for (int w = 0; w <= r; ++w) out[static_cast<std::size_t>((*this)(w))] += unit * binomial_big(static_cast<unsigned>(r), static_cast<unsigned>(w));
    return out;
  }

  Rational distance_to_uniform() const {
    const auto p = pushforward();
    return total_variation(p, std::vector<Rational>(p.size(), Rational(1, m())));
  }
};

/// Thresholds minimizing TV(T(U), U_m); ties go to the lexicographically smallest vector.
inline ThresholdMap best_threshold_map(int r, int m) {
  if (m < 2 || m > r + 1) throw std::invalid_argument("best_threshold_map: need 2 <= m <= r + 1");
  ThresholdMap best{r, {}};
  Rational best_d = 2;
  std::vector<int> t(static_cast<std::size_t>(m - 1));
  // Lexicographic enumeration of increasing sequences in [0, r-1].
  auto rec = [&](auto&& self, int j, int lo) -> void {
    if (j == m - 1) {
      ThresholdMap cand{r, t};
      const Rational d = cand.distance_to_uniform();
      if (d < best_d) {
        best_d = d;
        best = cand;
      }
      return;
    }
    for (int v = lo; v <= r - 1 - (m - 2 - j); ++v) {
      t[static_cast<std::size_t>(j)] = v;
      self(self, j + 1, v + 1);
    }
  };
  rec(rec, 0, 0);
  return best;
}

inline EmbeddingPtr symmetric_embedding(const ThresholdMap& T) { return LocalEmbedding::threshold(T.r, T.t); }

/// KL(T(U) || U_m), natural log.
inline double kl_to_uniform(const std::vector<Rational>& p) {
  const double m = static_cast<double>(p.size());
  double s = 0;
  for (const auto& v : p) {
    const double x = v.get_d();
    if (x > 0) s += x * std::log(x * m);
  }
  return s;
}

/// Squared Hellinger distance to U_m.
inline double hellinger_sq_to_uniform(const std::vector<Rational>& p) {
  const double m = static_cast<double>(p.size());
  double bc = 0;
  for (const auto& v : p) bc += std::sqrt(v.get_d() / m);
  return 1 - bc;
}

}  // namespace monoembed
