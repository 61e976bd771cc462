// Independent reference computations for tests. Deliberately naive: full pairwise
// order checks, exhaustive function enumeration, direct formula evaluation.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "monoembed/function.hpp"
#include "monoembed/measure.hpp"
#include "monoembed/rational.hpp"

namespace oracle {

using monoembed::Coords;
using monoembed::DenseBooleanFunction;
using monoembed::Domain;
using monoembed::ProductMeasure;
using monoembed::Rational;

inline bool coords_leq(const Coords& a, const Coords& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

/// Monotone over all comparable pairs, not just covering ones.
inline bool monotone_pairwise(const DenseBooleanFunction& f) {
  const Domain& d = f.domain();
  const std::uint64_t N = d.size();
  std::vector<Coords> pts;
  for (std::uint64_t x = 0; x < N; ++x) pts.push_back(d.unrank(x));
  for (std::uint64_t x = 0; x < N; ++x)
    for (std::uint64_t y = 0; y < N; ++y)
      if (f(x) && !f(y) && coords_leq(pts[x], pts[y])) return false;
  return true;
}

/// All monotone functions of a domain with at most 16 points, by filtering all 2^N tables.
inline std::vector<DenseBooleanFunction> all_monotone(const Domain& d) {
  const std::uint64_t N = d.size();
  std::vector<DenseBooleanFunction> out;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << N); ++code) {
    std::vector<std::uint8_t> t(N);
    for (std::uint64_t x = 0; x < N; ++x) t[x] = (code >> x) & 1u;
    DenseBooleanFunction f(d, t);
    if (monotone_pairwise(f)) out.push_back(f);
  }
  return out;
}

inline Rational product_mass(const ProductMeasure& mu, const Coords& x) {
  Rational out = 1;
  for (std::size_t i = 0; i < x.size(); ++i) out *= mu.coordinate(static_cast<int>(i))[x[i]];
  return out;
}

inline Rational distance_by_list(const DenseBooleanFunction& f, const ProductMeasure& mu,
                                 const std::vector<DenseBooleanFunction>& monos) {
  Rational best = 2;
  const Domain& d = f.domain();
  std::vector<Rational> mass(d.size());
  for (std::uint64_t x = 0; x < d.size(); ++x) mass[x] = product_mass(mu, d.unrank(x));
  for (const auto& g : monos) {
    Rational c = 0;
    for (std::uint64_t x = 0; x < d.size(); ++x)
      if (f(x) != g(x)) c += mass[x];
    if (c < best) best = c;
  }
  return best;
}

/// Negative sensitivity from the definition: coordinates i where some y differing only at i violates with x.
inline int sensitivity_by_definition(const DenseBooleanFunction& f, std::uint64_t xr, bool covering_only) {
  const Domain& d = f.domain();
  const Coords x = d.unrank(xr);
  int s = 0;
  for (int i = 0; i < d.n(); ++i) {
    bool hit = false;
    for (int v = 0; v < d.m(); ++v) {
      if (v == static_cast<int>(x[static_cast<std::size_t>(i)])) continue;
      if (covering_only && std::abs(v - static_cast<int>(x[static_cast<std::size_t>(i)])) != 1) continue;
      Coords y = x;
      y[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(v);
      const bool fy = f.at(y), fx = f(xr);
      if (v > static_cast<int>(x[static_cast<std::size_t>(i)]) && fx && !fy) hit = true;
      if (v < static_cast<int>(x[static_cast<std::size_t>(i)]) && !fx && fy) hit = true;
    }
    s += hit;
  }
  return s;
}

/// Hall's condition by subset enumeration: w_U(S) <= w_V(N(S)) for every S in the support of w_U.
inline bool hall_by_enumeration(const std::map<std::uint32_t, Rational>& wU, const std::map<std::uint32_t, Rational>& wV) {
  std::vector<std::pair<std::uint32_t, Rational>> U;
  for (const auto& kv : wU)
    if (kv.second > 0) U.push_back(kv);
  if (U.size() > 20) throw std::length_error("hall_by_enumeration: support too large");
  for (std::uint64_t sel = 1; sel < (std::uint64_t{1} << U.size()); ++sel) {
    Rational ws = 0, wn = 0;
    for (std::size_t i = 0; i < U.size(); ++i)
      if (sel >> i & 1u) ws += U[i].second;
    for (const auto& [v, w] : wV) {
      bool hit = false;
      for (std::size_t i = 0; i < U.size() && !hit; ++i) hit = (sel >> i & 1u) && (U[i].first & ~v) == 0;
      if (hit) wn += w;
    }
    if (ws > wn) return false;
  }
  return true;
}

/// Largest matching in {(a, b): a subset of b} by trying every injection, for tiny sets.
inline int max_monotone_matching_brute(const std::vector<std::uint32_t>& A, const std::vector<std::uint32_t>& B) {
  int best = 0;
  std::vector<char> used(B.size(), 0);
  auto rec = [&](auto&& self, std::size_t i, int got) -> void {
    if (got + static_cast<int>(A.size() - i) <= best) return;
    if (i == A.size()) {
      best = std::max(best, got);
      return;
    }
    for (std::size_t j = 0; j < B.size(); ++j)
      if (!used[j] && (A[i] & ~B[j]) == 0) {
        used[j] = 1;
        self(self, i + 1, got + 1);
        used[j] = 0;
      }
    self(self, i + 1, got);
  };
  rec(rec, 0, 0);
  return best;
}

}  // namespace oracle
