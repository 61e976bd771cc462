#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "flow.hpp"
#include "function.hpp"
#include "measure.hpp"
#include "rational.hpp"

namespace monoembed {

inline constexpr std::uint64_t kMaxDistancePoints = std::uint64_t{1} << 20;

struct DistanceCertificate {
  Rational epsilon;
  DenseBooleanFunction g;
  std::vector<std::uint64_t> changed;
};

/// Delta(f, g; mu): mass of the points where f and g disagree.
inline Rational disagreement(const DenseBooleanFunction& f, const DenseBooleanFunction& g, const ProductMeasure& mu) {
  if (!(f.domain() == g.domain()) || !(f.domain() == mu.domain())) throw std::invalid_argument("disagreement: domain mismatch");
  Rational out = 0;
  for (std::uint64_t x = 0; x < f.size(); ++x)
    if (f(x) != g(x)) out += mu.measure_of(x);
  return out;
}

namespace detail {

template <class Cap>
std::vector<char> min_cut_upset(const DenseBooleanFunction& f, const std::vector<Cap>& w, const Cap& inf) {
  const Domain& dom = f.domain();
  const int N = static_cast<int>(f.size());
  const int s = N, t = N + 1;
  MaxFlow<Cap> net(N + 2);
  for (int x = 0; x < N; ++x) {
    if (w[static_cast<std::size_t>(x)] > 0) {
      if (f(static_cast<std::uint64_t>(x)))
        net.add_edge(s, x, w[static_cast<std::size_t>(x)]);
      else
        net.add_edge(x, t, w[static_cast<std::size_t>(x)]);
    }
    dom.for_each_up_cover(static_cast<std::uint64_t>(x), [&](int, std::uint64_t y) { net.add_edge(x, static_cast<int>(y), inf); });
  }
  net.max_flow(s, t);
  auto side = net.source_side(s);
  side.resize(static_cast<std::size_t>(N));
  return side;
}

}  // namespace detail

/// Exact distance to the closest monotone function via a minimum cut on the covering DAG.
/// The witness is 1 exactly on the minimal optimal up-set (residual reach of the source).
inline DistanceCertificate distance_to_monotone(const DenseBooleanFunction& f, const ProductMeasure& mu) {
  if (!(f.domain() == mu.domain())) throw std::invalid_argument("distance_to_monotone: domain mismatch");
  if (f.size() > kMaxDistancePoints) throw std::length_error("distance_to_monotone: domain exceeds 2^20 points");
  const std::uint64_t N = f.size();
  const BigInt D = mu.common_denominator();
  std::vector<char> upset;
  if (mpz_sizeinbase(D.get_mpz_t(), 2) <= 60) {
    std::vector<std::int64_t> w(N);
    for (std::uint64_t x = 0; x < N; ++x) w[x] = mu.scaled_mass(x).get_si();
    upset = detail::min_cut_upset<std::int64_t>(f, w, D.get_si() + 1);
  } else {
    std::vector<BigInt> w(N);
    for (std::uint64_t x = 0; x < N; ++x) w[x] = mu.scaled_mass(x);
    upset = detail::min_cut_upset<BigInt>(f, w, D + 1);
  }
  std::vector<std::uint8_t> gt(N);
  for (std::uint64_t x = 0; x < N; ++x) gt[x] = upset[x] ? 1 : 0;
  DistanceCertificate cert{0, DenseBooleanFunction(f.domain(), std::move(gt)), {}};
  for (std::uint64_t x = 0; x < N; ++x) {
    if (f(x) != cert.g(x)) {
      cert.changed.push_back(x);
      cert.epsilon += mu.measure_of(x);
    }
  }
  return cert;
}

/// Exhaustive minimum over monotone g (branch and bound over a linear extension).
inline Rational brute_force_distance(const DenseBooleanFunction& f, const ProductMeasure& mu) {
  const Domain& dom = f.domain();
  if (!(dom == mu.domain())) throw std::invalid_argument("brute_force_distance: domain mismatch");
  const std::uint64_t cap = dom.is_cube() ? 512 : 81;
  if (!dom.dense_ok() || dom.size() > cap) throw std::length_error("brute_force_distance: domain too large");
  const std::size_t N = dom.size();
  std::vector<std::uint64_t> order(N);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return dom.level(a) < dom.level(b); });
  std::vector<Rational> mass(N);
  for (std::size_t x = 0; x < N; ++x) mass[x] = mu.measure_of(x);

  Rational best = 0, ones = 0;
  for (std::size_t x = 0; x < N; ++x)
    if (f(x)) ones += mass[x];
  const Rational zeros = 1 - ones;
  best = ones < zeros ? ones : zeros;  // constant functions

  std::vector<std::int8_t> g(N, -1);
  auto rec = [&](auto&& self, std::size_t idx, const Rational& cost) -> void {
    if (cost >= best) return;
    if (idx == N) {
      best = cost;
      return;
    }
    const std::uint64_t x = order[idx];
    bool forced = false;
    dom.for_each_down_cover(x, [&](int, std::uint64_t y) { forced = forced || g[y] == 1; });
    const int fx = f(x) ? 1 : 0;
    int choices[2] = {fx, 1 - fx};
    for (int v : choices) {
      if (forced && v == 0) continue;
      g[x] = static_cast<std::int8_t>(v);
      self(self, idx + 1, v == fx ? cost : cost + mass[x]);
    }
    g[x] = -1;
  };
  rec(rec, 0, Rational(0));
  return best;
}

/// Which neighbours along a coordinate line count toward negative sensitivity on grids.
enum class SensitivityMode { Covering, AnyOnLine };

inline int neg_sensitivity(const DenseBooleanFunction& f, std::uint64_t x, SensitivityMode mode = SensitivityMode::Covering) {
  const Domain& dom = f.domain();
  const bool fx = f(x);
  int count = 0;
  for (int i = 0; i < dom.n(); ++i) {
    const std::uint32_t d = dom.digit(x, i);
    const std::uint64_t st = dom.stride(i);
    bool hit = false;
    if (fx) {
      const std::uint32_t top = (mode == SensitivityMode::Covering) ? std::min<std::uint32_t>(d + 1, static_cast<std::uint32_t>(dom.m() - 1))
                                                                    : static_cast<std::uint32_t>(dom.m() - 1);
      for (std::uint32_t v = d + 1; v <= top && !hit; ++v) hit = !f(x + (v - d) * st);
    } else {
      const std::uint32_t bottom = (mode == SensitivityMode::Covering) ? (d == 0 ? 0 : d - 1) : 0;
      for (std::uint32_t v = bottom; v < d && !hit; ++v) hit = f(x - (d - v) * st);
    }
    count += hit ? 1 : 0;
  }
  return count;
}

/// Exact mass of each sensitivity value: out[s] = mu({x : s_f^-(x) = s}).
inline std::vector<Rational> sensitivity_masses(const DenseBooleanFunction& f, const ProductMeasure& mu,
                                                SensitivityMode mode = SensitivityMode::Covering) {
  std::vector<Rational> out(static_cast<std::size_t>(f.domain().n()) + 1, 0);
  for (std::uint64_t x = 0; x < f.size(); ++x) out[static_cast<std::size_t>(neg_sensitivity(f, x, mode))] += mu.measure_of(x);
  return out;
}

/// E_mu[sqrt(s_f^-)], exact masses, irrational root in long double.
inline long double talagrand_objective(const DenseBooleanFunction& f, const ProductMeasure& mu,
                                       SensitivityMode mode = SensitivityMode::Covering) {
  const auto masses = sensitivity_masses(f, mu, mode);
  long double total = 0;
  for (std::size_t s = 1; s < masses.size(); ++s)
    if (masses[s] != 0) total += static_cast<long double>(masses[s].get_d()) * std::sqrt(static_cast<long double>(s));
  return total;
}

enum class IsoperimetryForm { CubeUniform, CubeBiased, Grid };

struct IsoperimetryReport {
  Rational epsilon;
  long double objective = 0;
  IsoperimetryForm form = IsoperimetryForm::CubeUniform;
  std::optional<long double> ratio;  // empty when f is monotone
};

inline bool is_uniform(const ProductMeasure& mu) {
  const Rational u(1, mu.domain().m());
  for (int i = 0; i < mu.domain().n(); ++i)
    for (const auto& v : mu.coordinate(i))
      if (v != u) return false;
  return true;
}

/// Ratio forms (natural log):
///   cube, uniform: objective * ln(n/eps) / eps
///   cube, biased:  objective * ln(n/eps)^2 / eps
///   grid:          objective * ln(mn/eps)^2 * m^3 / eps
inline IsoperimetryReport isoperimetry_report(const DenseBooleanFunction& f, const ProductMeasure& mu,
                                              SensitivityMode mode = SensitivityMode::Covering) {
  IsoperimetryReport rep;
  rep.epsilon = distance_to_monotone(f, mu).epsilon;
  rep.objective = talagrand_objective(f, mu, mode);
  const Domain& dom = f.domain();
  rep.form = dom.is_cube() ? (is_uniform(mu) ? IsoperimetryForm::CubeUniform : IsoperimetryForm::CubeBiased) : IsoperimetryForm::Grid;
  if (rep.epsilon == 0) return rep;
  const long double eps = rep.epsilon.get_d();
  const long double n = dom.n(), m = dom.m();
  switch (rep.form) {
    case IsoperimetryForm::CubeUniform:
      rep.ratio = rep.objective * std::log(n / eps) / eps;
      break;
    case IsoperimetryForm::CubeBiased: {
      const long double l = std::log(n / eps);
      rep.ratio = rep.objective * l * l / eps;
      break;
    }
    case IsoperimetryForm::Grid: {
      const long double l = std::log(m * n / eps);
      rep.ratio = rep.objective * l * l * m * m * m / eps;
      break;
    }
  }
  return rep;
}

inline const char* form_name(IsoperimetryForm f) {
  switch (f) {
    case IsoperimetryForm::CubeUniform: return "cube-uniform";
    case IsoperimetryForm::CubeBiased: return "cube-biased";
    case IsoperimetryForm::Grid: return "grid";
  }
  return "?";
}

}  // namespace monoembed
