#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <vector>

#include "frac_matching.hpp"
#include "random.hpp"

namespace monoembed {

struct SliceDominationParams {
  int n = 0;
  int k = 0;
  int t = 0;
  std::uint64_t s = 0;  // |S|
  int d = 0;

  Rational rho() const { return ratio(BigInt(static_cast<unsigned long>(s)), binomial_big(static_cast<unsigned>(n), static_cast<unsigned>(k))); }
  /// 10 n^{1/3} <= t, the lower end of the asymptotic t range; false at most desk sizes.
  bool t_in_asymptotic_range() const { return 10.0 * std::cbrt(static_cast<double>(n)) <= static_cast<double>(t); }
  void check() const {
    if (n < 1 || n > 20) throw std::invalid_argument("slice domination: need 1 <= n <= 20");
    if (k < 0 || k > n) throw std::invalid_argument("slice domination: k out of range");
    if (t < 0) throw std::invalid_argument("slice domination: t must be nonnegative");
    if (s > binomial(n, k)) throw std::invalid_argument("slice domination: s exceeds the slice size");
  }
};

enum class DominationSide {
  Lower,  // (t + rho) mu_{k-t} <~ t mu_k + mu_S
  Upper   // t mu_k + mu_S <~ (t + rho) mu_{k+t}
};

/// Uniform s-subset of the weight-k slice.
inline std::vector<std::uint32_t> random_slice_subset(int n, int k, std::uint64_t s, Rng& rng) {
  auto pts = slice_points(n, k);
  for (std::size_t i = 0; i < s; ++i) std::swap(pts[i], pts[i + uniform_below(rng, pts.size() - i)]);
  pts.resize(static_cast<std::size_t>(s));
  std::sort(pts.begin(), pts.end());
  return pts;
}

inline bool slice_domination_holds(const SliceDominationParams& p, const std::vector<std::uint32_t>& S, DominationSide side) {
  const Rational rho = p.rho();
  const WeightFn mid = added(scaled(slice_measure(p.n, p.k), Rational(p.t)), restricted_slice_measure(p.n, p.k, S));
  if (side == DominationSide::Lower) {
    if (p.k - p.t < 0) throw std::invalid_argument("slice domination: k - t < 0");
    return frac_matching_solve(scaled(slice_measure(p.n, p.k - p.t), p.t + rho), mid).feasible;
  }
  if (p.k + p.t > p.n) throw std::invalid_argument("slice domination: k + t > n");
  return frac_matching_solve(mid, scaled(slice_measure(p.n, p.k + p.t), p.t + rho)).feasible;
}

struct DominationRecord {
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  std::vector<char> outcome;  // per trial, in trial order
  bool t_in_asymptotic_range = false;
};

/// Trial i draws S from trial_rng(seed, i); results do not depend on jobs.
inline DominationRecord slice_domination_check(const SliceDominationParams& p, std::uint64_t seed, std::uint64_t trials, DominationSide side = DominationSide::Lower,
                                               unsigned jobs = 1) {
  p.check();
  DominationRecord rec;
  rec.trials = trials;
  rec.t_in_asymptotic_range = p.t_in_asymptotic_range();
  rec.outcome.assign(static_cast<std::size_t>(trials), 0);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&]() {
    for (std::uint64_t i; (i = next.fetch_add(1)) < trials;) {
      Rng rng = trial_rng(seed, i);
      const auto S = random_slice_subset(p.n, p.k, p.s, rng);
      rec.outcome[static_cast<std::size_t>(i)] = slice_domination_holds(p, S, side) ? 1 : 0;
    }
  };
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < std::max(1u, jobs); ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  rec.successes = static_cast<std::uint64_t>(std::count(rec.outcome.begin(), rec.outcome.end(), 1));
  return rec;
}

struct UnionMatchRecord {
  bool lower_holds = false;  // mu_{k-2d} <~ nu_T
  bool upper_holds = false;  // nu_T <~ mu_{k+d}
  bool precondition_holds = false;  // sum_{i=k-d}^{k-1} C(n,i) >= t C(n,k)
  std::size_t t_size = 0;
};

/// T = S together with all of slices k-d .. k-1; nu_T uniform on T.
inline UnionMatchRecord union_slice_match(int n, int k, int d, int t, const std::vector<std::uint32_t>& S) {
  if (n < 1 || n > 20 || k < 0 || k > n || d < 0) throw std::invalid_argument("union_slice_match: parameters out of range");
  if (k - 2 * d < 0 || k + d > n) throw std::invalid_argument("union_slice_match: comparison slices fall outside the cube");
  std::vector<std::uint32_t> T;
  for (auto x : S) {
    if (popcount(x) != k) throw std::invalid_argument("union_slice_match: S must lie in slice k");
    T.push_back(x);
  }
  for (int i = k - d; i < k; ++i)
    for (auto x : enumerate_slice(n, i)) T.push_back(x);
  if (T.empty()) throw std::invalid_argument("union_slice_match: T is empty");
  UnionMatchRecord rec;
  BigInt below = 0;
  for (int i = k - d; i < k; ++i) below += binomial_big(static_cast<unsigned>(n), static_cast<unsigned>(i));
  rec.precondition_holds = below >= BigInt(t) * binomial_big(static_cast<unsigned>(n), static_cast<unsigned>(k));
  const WeightFn nu = uniform_on(T);
  rec.t_size = nu.size();
  rec.lower_holds = frac_matching_solve(slice_measure(n, k - 2 * d), nu).feasible;
  rec.upper_holds = frac_matching_solve(nu, slice_measure(n, k + d)).feasible;
  return rec;
}

struct DropTransformReport {
  std::uint64_t samples = 0;
  std::uint64_t order_violations = 0;  // sampled pairs with x' not below y'
  double x_tv = 0, y_tv = 0;           // total variation to the exact targets
  double x_max_dev = 0, y_max_dev = 0; // max pointwise deviation
  WeightFn x_target, y_target;         // normalized to probability
  std::map<std::uint32_t, std::uint64_t> x_counts, y_counts;
};

/// Zero the first d one-coordinates of v in the order given by perm.
inline std::uint32_t drop_first_ones(std::uint32_t v, const std::vector<int>& perm, int d) {
  for (int i : perm) {
    if (d == 0) break;
    if (v >> i & 1u) {
      v &= ~(1u << i);
      --d;
    }
  }
  return v;
}

/// Sampler for the drop transform of a witness w of (t + rho) mu_{k-t} <~ t mu_k + mu_S:
/// (x, y) ~ w / (t + rho), a shared random permutation drops the first d ones of x, and y is
/// kept when in S with probability 1 / (t + 1), otherwise dropped the same way.
inline DropTransformReport coupling_drop_transform(const FracMatching& w, int n, int k, int t, const std::vector<std::uint32_t>& S, int d,
                                                   std::uint64_t samples, Rng& rng) {
  require_valid(w, "coupling_drop_transform");
  if (k - t - d < 0) throw std::invalid_argument("coupling_drop_transform: k - t - d < 0");
  const SliceDominationParams p{n, k, t, static_cast<std::uint64_t>(S.size()), d};
  const Rational rho = p.rho(), total = t + rho;
  if (w.mass() != total) throw std::invalid_argument("coupling_drop_transform: witness mass must be t + rho");
  std::vector<std::uint32_t> Ssorted = S;
  std::sort(Ssorted.begin(), Ssorted.end());
  auto in_S = [&](std::uint32_t y) { return std::binary_search(Ssorted.begin(), Ssorted.end(), y); };

  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  std::vector<double> cdf;
  double acc = 0;
  for (const auto& [uv, x] : w.w) {
    pairs.push_back(uv);
    acc += Rational(x / total).get_d();
    cdf.push_back(acc);
  }
  DropTransformReport rep;
  rep.samples = samples;
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  const Rational keep = Rational(1, t + 1);
  const double keep_d = keep.get_d();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::uint64_t s = 0; s < samples; ++s) {
    const double u = unit(rng) * acc;
    std::size_t idx = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    if (idx >= pairs.size()) idx = pairs.size() - 1;
    auto [x, y] = pairs[idx];
    std::shuffle(perm.begin(), perm.end(), rng);
    const std::uint32_t xp = drop_first_ones(x, perm, d);
    std::uint32_t yp = y;
    if (!(in_S(y) && unit(rng) < keep_d)) yp = drop_first_ones(y, perm, d);
    if ((xp & ~yp) != 0) ++rep.order_violations;
    ++rep.x_counts[xp];
    ++rep.y_counts[yp];
  }

  // Exact targets: mu_{k-t-d}, and (t mu_{k-d} + mu_S) / (t + rho).
  rep.x_target = slice_measure(n, k - t - d);
  if (d == 0) {
    rep.y_target = scaled(w.right, 1 / total);
  } else {
    rep.y_target = scaled(added(scaled(slice_measure(n, k - d), Rational(t)), restricted_slice_measure(n, k, Ssorted)), 1 / total);
  }
  auto compare = [&](const WeightFn& target, const std::map<std::uint32_t, std::uint64_t>& counts, double& tv, double& maxdev) {
    std::map<std::uint32_t, double> diff;
    for (const auto& [z, v] : target) diff[z] = v.get_d();
    for (const auto& [z, c] : counts) diff[z] -= static_cast<double>(c) / static_cast<double>(samples);
    tv = 0;
    maxdev = 0;
    for (const auto& [z, v] : diff) {
      tv += std::abs(v) / 2;
      maxdev = std::max(maxdev, std::abs(v));
    }
  };
  compare(rep.x_target, rep.x_counts, rep.x_tv, rep.x_max_dev);
  compare(rep.y_target, rep.y_counts, rep.y_tv, rep.y_max_dev);
  return rep;
}

}  // namespace monoembed
