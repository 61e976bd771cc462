#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "bias.hpp"
#include "bits.hpp"
#include "lift.hpp"
#include "random.hpp"
#include "rational.hpp"

namespace monoembed {

/// Outcome of one 2-query trial: x below y, reject iff f(x) = 1 and f(y) = 0.
struct TesterVerdict {
  bool reject = false;
  BitVector x, y;
  int queries = 0;
};

using CubeOracle = std::function<bool(const BitVector&)>;

/// Walk length tau = 2^j with j uniform in 0..floor(log2 N), capped by the coordinates available.
inline int max_walk_exponent(std::size_t N) {
  int j = 0;
  while ((std::size_t{2} << j) <= N) ++j;
  return j;
}

/// Pair tester on {0,1}^N: uniform x, direction up or down, flip a random tau-subset of the
/// coordinates that can move in that direction, query both ends.
inline TesterVerdict cube_pair_trial(const CubeOracle& f, std::size_t N, Rng& rng) {
  if (N == 0) throw std::invalid_argument("cube_pair_trial: N must be positive");
  TesterVerdict v;
  BitVector x(N);
  auto& w = x.words();
  for (auto& word : w) word = rng();
  if (N % 64) w.back() &= low_mask(static_cast<int>(N % 64));
  const bool up = coin(rng);
  const int j = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(max_walk_exponent(N) + 1)));
  std::vector<std::uint32_t> movable;
  movable.reserve(N);
  for (std::size_t i = 0; i < N; ++i)
    if (x.get(i) != up) movable.push_back(static_cast<std::uint32_t>(i));
  const std::size_t tau = std::min<std::size_t>(std::size_t{1} << j, movable.size());
  BitVector y = x;
  for (std::size_t i = 0; i < tau; ++i) {
    std::swap(movable[i], movable[i + uniform_below(rng, movable.size() - i)]);
    y.flip(movable[i]);
  }
  v.x = up ? std::move(x) : std::move(y);
  v.y = up ? std::move(y) : std::move(x);
  const bool fx = f(v.x);
  const bool fy = f(v.y);
  v.queries = 2;
  v.reject = fx && !fy;
  return v;
}

inline TesterVerdict lifted_tester_trial(const LiftedOracle& g, Rng& rng) {
  return cube_pair_trial([&](const BitVector& z) { return g(z); }, g.dim(), rng);
}

/// R(N, eps) = eps^2 / (sqrt(N) * max(1, log2 N)^kappa).
inline long double rejection_reference(std::size_t N, const Rational& eps, double kappa) {
  const long double e = static_cast<long double>(eps.get_d());
  const long double lg = std::max<long double>(1, std::log2(static_cast<long double>(N)));
  return e * e / (std::sqrt(static_cast<long double>(N)) * std::pow(lg, static_cast<long double>(kappa)));
}

/// ceil(10 / R(N, eps)).
inline std::uint64_t planned_repetitions(std::size_t N, const Rational& eps, double kappa) {
  return static_cast<std::uint64_t>(std::ceil(10.0L / rejection_reference(N, eps, kappa)));
}

struct PipelineConfig {
  double kappa = 3;
  std::uint64_t max_trials = 0;  // 0: run the planned count
};

struct PipelineResult {
  bool reject = false;
  std::uint64_t trials_planned = 0;
  std::uint64_t trials_run = 0;
  std::uint64_t queries = 0;  // counted by the base oracle
  int r = 0;
  std::size_t dim = 0;
  std::optional<TesterVerdict> witness;
};

namespace detail {

inline PipelineResult run_repetitions(const LiftedOracle& g, const Rational& eps_scaled, Rng& rng, const PipelineConfig& cfg) {
  PipelineResult res;
  res.r = g.embedding().r();
  res.dim = g.dim();
  res.trials_planned = planned_repetitions(g.dim(), eps_scaled, cfg.kappa);
  const std::uint64_t limit = cfg.max_trials ? std::min(cfg.max_trials, res.trials_planned) : res.trials_planned;
  const std::uint64_t before = g.base().queries();
  for (std::uint64_t t = 0; t < limit; ++t) {
    auto v = lifted_tester_trial(g, rng);
    ++res.trials_run;
    if (v.reject) {
      res.reject = true;
      res.witness = std::move(v);
      break;
    }
  }
  res.queries = g.base().queries() - before;
  return res;
}

}  // namespace detail

/// Embeds mu_{p'} with |p - p'| <= (eps/2) / n^10 and repeats the lifted trial ceil(10 / R(rn, eps/2)) times.
inline PipelineResult pbias_pipeline(const CountingOracle& f, const Rational& p, const Rational& eps, Rng& rng, const PipelineConfig& cfg = {}) {
  if (f.domain().m() != 2) throw std::invalid_argument("pbias_pipeline: function must live on a cube");
  if (p <= 0 || p >= 1) throw std::invalid_argument("pbias_pipeline: p must lie in (0,1)");
  if (eps <= 0 || eps >= 1) throw std::invalid_argument("pbias_pipeline: eps must lie in (0,1)");
  const Rational half = eps / 2;
  const auto bias = approx_bias(p, half, static_cast<std::uint64_t>(f.domain().n()));
  const LiftedOracle g(f, bias.embedding);
  return detail::run_repetitions(g, half, rng, cfg);
}

/// Same with a (relaxed) embedding of [m] and eps/4.
inline PipelineResult hypergrid_pipeline(const CountingOracle& f, EmbeddingPtr e, const Rational& eps, Rng& rng, const PipelineConfig& cfg = {}) {
  if (!e) throw std::invalid_argument("hypergrid_pipeline: no embedding certificate; run construct-apm or search-embedding first");
  if (eps <= 0 || eps >= 1) throw std::invalid_argument("hypergrid_pipeline: eps must lie in (0,1)");
  const LiftedOracle g(f, std::move(e));
  return detail::run_repetitions(g, eps / 4, rng, cfg);
}

struct RejectionProfile {
  std::uint64_t trials = 0;
  std::uint64_t rejections = 0;
  double estimate = 0;
  double lo = 0, hi = 0;  // Wilson 95%
};

inline std::pair<double, double> wilson_interval(std::uint64_t k, std::uint64_t n, double z = 1.96) {
  if (n == 0) return {0, 1};
  const double nn = static_cast<double>(n), ph = static_cast<double>(k) / nn, z2 = z * z;
  const double centre = (ph + z2 / (2 * nn)) / (1 + z2 / nn);
  const double half = z * std::sqrt(ph * (1 - ph) / nn + z2 / (4 * nn * nn)) / (1 + z2 / nn);
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

/// Trial i runs on trial_rng(seed, i); the profile does not depend on jobs.
inline RejectionProfile estimate_rejection(const std::function<TesterVerdict(Rng&)>& trial, std::uint64_t trials, std::uint64_t seed, unsigned jobs = 1) {
  if (trials == 0) throw std::invalid_argument("estimate_rejection: trials must be positive");
  std::atomic<std::uint64_t> next{0}, rejections{0};
  auto worker = [&]() {
    for (std::uint64_t i; (i = next.fetch_add(1)) < trials;) {
      Rng rng = trial_rng(seed, i);
      if (trial(rng).reject) rejections.fetch_add(1);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < std::max(1u, jobs); ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  RejectionProfile prof;
  prof.trials = trials;
  prof.rejections = rejections.load();
  prof.estimate = static_cast<double>(prof.rejections) / static_cast<double>(trials);
  std::tie(prof.lo, prof.hi) = wilson_interval(prof.rejections, trials);
  return prof;
}

}  // namespace monoembed
