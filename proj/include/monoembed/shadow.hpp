#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bits.hpp"
#include "random.hpp"
#include "rational.hpp"

namespace monoembed {

/// A subset of the weight-k slice of {0,1}^n, kept sorted.
struct SliceFamily {
  int n = 0;
  int k = 0;
  std::vector<std::uint32_t> points;

  static SliceFamily from_points(int n, int k, std::vector<std::uint32_t> pts) {
    if (n < 0 || n > kMaxDim) throw std::invalid_argument("slice family: n out of range");
    if (k < 0 || k > n) throw std::invalid_argument("slice family: weight out of range");
    for (auto x : pts)
      if (popcount(x) != k || (n < 32 && (x >> n) != 0)) throw std::invalid_argument("slice family: point not in slice");
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return SliceFamily{n, k, std::move(pts)};
  }
  static SliceFamily full(int n, int k) { return SliceFamily{n, k, slice_points(n, k)}; }

  std::size_t size() const noexcept { return points.size(); }
  bool empty() const noexcept { return points.empty(); }
  bool contains(std::uint32_t x) const { return std::binary_search(points.begin(), points.end(), x); }
  /// mu_k(A) = |A| / C(n,k), exact.
  Rational density() const { return ratio(BigInt(static_cast<unsigned long>(points.size())), binomial_big(static_cast<unsigned>(n), static_cast<unsigned>(k))); }
  bool operator==(const SliceFamily&) const = default;

  static constexpr int kMaxDim = 30;
};

enum class ShadowDirection { Up, Down };

inline SliceFamily shadow_step(const SliceFamily& A, ShadowDirection dir) {
  const int k2 = dir == ShadowDirection::Up ? A.k + 1 : A.k - 1;
  if (k2 < 0 || k2 > A.n) throw std::out_of_range("shadow: steps exceed the cube");
  std::vector<std::uint32_t> out;
  out.reserve(A.points.size() * static_cast<std::size_t>(std::max(1, A.n / 2)));
  for (auto x : A.points)
    for (int i = 0; i < A.n; ++i) {
      const std::uint32_t b = 1u << i;
      if (dir == ShadowDirection::Up && !(x & b)) out.push_back(x | b);
      if (dir == ShadowDirection::Down && (x & b)) out.push_back(x & ~b);
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return SliceFamily{A.n, k2, std::move(out)};
}

/// Iterated shadow; t = 0 returns A.
inline SliceFamily iterated_shadow(const SliceFamily& A, int t, ShadowDirection dir) {
  if (t < 0) throw std::out_of_range("shadow: negative step count");
  if ((dir == ShadowDirection::Up && A.k + t > A.n) || (dir == ShadowDirection::Down && A.k - t < 0)) throw std::out_of_range("shadow: steps exceed the cube");
  SliceFamily cur = A;
  for (int i = 0; i < t; ++i) cur = shadow_step(cur, dir);
  return cur;
}

inline SliceFamily upper_shadow(const SliceFamily& A, int t = 1) { return iterated_shadow(A, t, ShadowDirection::Up); }
inline SliceFamily lower_shadow(const SliceFamily& A, int t = 1) { return iterated_shadow(A, t, ShadowDirection::Down); }

/// x -> complement of x; maps slice k to slice n-k.
inline SliceFamily complement_family(const SliceFamily& A) {
  std::vector<std::uint32_t> pts;
  const std::uint32_t mask = static_cast<std::uint32_t>(low_mask(A.n));
  for (auto x : A.points) pts.push_back(~x & mask);
  return SliceFamily::from_points(A.n, A.n - A.k, std::move(pts));
}

struct KKResult {
  Rational lhs;        // density of the shadow
  long double rhs = 0; // mu_k(A)^{(1-1/n)^t}
  bool holds = false;
};

/// Iterated Kruskal-Katona: mu_{k +- t}(shadow^t A) >= mu_k(A)^{(1-1/n)^t}.
inline KKResult kk_check(const SliceFamily& A, int t, ShadowDirection dir) {
  if (A.empty()) throw std::invalid_argument("kk_check: family must be nonempty");
  const SliceFamily S = iterated_shadow(A, t, dir);
  KKResult res;
  res.lhs = S.density();
  const long double base = static_cast<long double>(A.density().get_d());
  const long double expo = std::pow(1.0L - 1.0L / static_cast<long double>(A.n), static_cast<long double>(t));
  res.rhs = std::pow(base, expo);
  res.holds = static_cast<long double>(res.lhs.get_d()) >= res.rhs * (1.0L - 1e-12L);
  return res;
}

/// Symmetric-difference density between two families of one slice.
inline Rational symmetric_difference_density(const SliceFamily& A, const SliceFamily& B) {
  if (A.n != B.n || A.k != B.k) throw std::invalid_argument("symmetric difference: different slices");
  std::vector<std::uint32_t> d;
  std::set_symmetric_difference(A.points.begin(), A.points.end(), B.points.begin(), B.points.end(), std::back_inserter(d));
  return ratio(BigInt(static_cast<unsigned long>(d.size())), binomial_big(static_cast<unsigned>(A.n), static_cast<unsigned>(A.k)));
}

struct ShadowApproximator {
  SliceFamily M;
  SliceFamily B_prime;  // shadow^t(M)
  SliceFamily B;        // majority pullback
  Rational shadow_error;  // mu(B' delta shadow^t A)
  Rational family_error;  // mu(B delta A)
  Rational shadow_bound;  // 6 eps mu(shadow^t A)
  Rational family_bound;  // 18 eps mu(A)
  int attempts = 0;
  bool success = false;
};

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Majority pullback: x in the slice of A whose neighbours t levels away lie in B' at least half the time.
inline SliceFamily majority_pullback(const SliceFamily& Bp, int n, int s, int t, ShadowDirection dir) {
  if (n > 24) throw std::length_error("majority_pullback: n too large for dense membership");
  std::vector<std::uint8_t> in(std::size_t{1} << n, 0);
  for (auto y : Bp.points) in[y] = 1;
  const std::uint32_t mask = static_cast<std::uint32_t>(low_mask(n));
  std::vector<std::uint32_t> out;
  const std::uint64_t total = binomial(dir == ShadowDirection::Up ? n - s : s, t);
  for (auto x : enumerate_slice(n, s)) {
    std::uint64_t hits = 0;
    if (dir == ShadowDirection::Up) {
      for_each_superset_in_weights(x, n, s + t, s + t, [&](std::uint32_t y) { hits += in[y]; });
    } else {
      // Subsets of x are complements of supersets of ~x.
      for_each_superset_in_weights(~x & mask, n, n - s + t, n - s + t, [&](std::uint32_t y) { hits += in[~y & mask]; });
    }
    if (2 * hits >= total) out.push_back(x);
  }
  return SliceFamily{n, s, std::move(out)};
}

/// Random M of the prescribed size, B' = shadow^t(M), B = majority pullback; retried until both error
/// bounds hold or retries run out (the returned record then carries the best attempt and success = false).
inline ShadowApproximator sparse_shadow_approximator(const SliceFamily& A, int t, const Rational& eps, Rng& rng, int max_retries = 20,
                                                     ShadowDirection dir = ShadowDirection::Up) {
  if (eps <= 0 || eps > Rational(1, 100)) throw std::invalid_argument("sparse_shadow_approximator: eps must lie in (0, 1/100]");
  if (A.empty()) throw std::invalid_argument("sparse_shadow_approximator: family must be nonempty");
  const SliceFamily SA = iterated_shadow(A, t, dir);
  const Rational muA = A.density(), muSA = SA.density();
  if (muSA > (1 + eps) * muA) throw PreconditionError("sparse_shadow_approximator: shadow density exceeds (1+eps) mu(A)");

  const int s = A.k;
  const double ln_inv = std::log(1.0 / eps.get_d());
  const double hr = static_cast<double>(binomial(dir == ShadowDirection::Up ? s + t : A.n - s + t, t));
  const std::size_t target = std::min<std::size_t>(
      A.size(), std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(100.0 * ln_inv / hr * static_cast<double>(A.size())))));

  ShadowApproximator best;
  bool have = false;
  const Rational shadow_bound = 6 * eps * muSA, family_bound = 18 * eps * muA;
  for (int attempt = 1; attempt <= std::max(1, max_retries); ++attempt) {
    std::vector<std::uint32_t> pool = A.points;
    // Partial Fisher-Yates for a uniform subset.
    for (std::size_t i = 0; i < target; ++i) std::swap(pool[i], pool[i + uniform_below(rng, pool.size() - i)]);
    pool.resize(target);
    ShadowApproximator cur;
    cur.M = SliceFamily::from_points(A.n, s, std::move(pool));
    cur.B_prime = iterated_shadow(cur.M, t, dir);
    cur.B = majority_pullback(cur.B_prime, A.n, s, t, dir);
    cur.shadow_error = symmetric_difference_density(cur.B_prime, SA);
    cur.family_error = symmetric_difference_density(cur.B, A);
    cur.shadow_bound = shadow_bound;
    cur.family_bound = family_bound;
    cur.attempts = attempt;
    cur.success = cur.shadow_error <= shadow_bound && cur.family_error <= family_bound;
    if (!have || cur.success || cur.shadow_error + cur.family_error < best.shadow_error + best.family_error) {
      best = std::move(cur);
      have = true;
    }
    best.attempts = attempt;
    if (best.success) break;
  }
  return best;
}

}  // namespace monoembed
