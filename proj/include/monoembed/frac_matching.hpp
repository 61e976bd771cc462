#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bits.hpp"
#include "flow.hpp"
#include "rational.hpp"

namespace monoembed {

/// Sparse nonnegative weights on points of {0,1}^n (bitmasks).
using WeightFn = std::map<std::uint32_t, Rational>;
using PairWeights = std::map<std::pair<std::uint32_t, std::uint32_t>, Rational>;

inline Rational total_mass(const WeightFn& w) {
  Rational s = 0;
  for (const auto& [x, v] : w) s += v;
  return s;
}

inline WeightFn scaled(const WeightFn& w, const Rational& c) {
  WeightFn out;
  if (c == 0) return out;
  for (const auto& [x, v] : w) out[x] = v * c;
  return out;
}

inline WeightFn added(const WeightFn& a, const WeightFn& b) {
  WeightFn out = a;
  for (const auto& [x, v] : b) out[x] += v;
  return out;
}

inline WeightFn drop_zeros(WeightFn w) {
  std::erase_if(w, [](const auto& kv) { return kv.second == 0; });
  return w;
}

/// mu_k: uniform on the weight-k slice.
inline WeightFn slice_measure(int n, int k) {
  WeightFn out;
  const Rational v = ratio(BigInt(1), binomial_big(static_cast<unsigned>(n), static_cast<unsigned>(k)));
  for (auto x : enumerate_slice(n, k)) out.emplace_hint(out.end(), x, v);
  return out;
}

/// mu_S(x) = mu_k(x) 1[x in S]; total mass |S| / C(n,k).
inline WeightFn restricted_slice_measure(int n, int k, const std::vector<std::uint32_t>& S) {
  WeightFn out;
  const Rational v = ratio(BigInt(1), binomial_big(static_cast<unsigned>(n), static_cast<unsigned>(k)));
  for (auto x : S) {
    if (popcount(x) != k) throw std::invalid_argument("restricted_slice_measure: point off slice");
    out[x] = v;
  }
  return out;
}

/// Uniform probability on a finite set.
inline WeightFn uniform_on(const std::vector<std::uint32_t>& pts) {
  if (pts.empty()) throw std::invalid_argument("uniform_on: empty set");
  WeightFn out;
  for (auto x : pts) out[x] = 0;
  const Rational v = ratio(BigInt(1), BigInt(static_cast<unsigned long>(out.size())));
  for (auto& [x, w] : out) w = v;
  return out;
}

struct FracMatching {
  WeightFn left;   // w_U
  WeightFn right;  // w_V
  PairWeights w;   // w(u, v) > 0 only when u <= v

  Rational mass() const { return total_mass(left); }
};

/// Shared validator: exact marginals, positive weights, order-respecting support. Empty string when valid.
inline std::string matching_error(const FracMatching& m) {
  WeightFn rows, cols;
  for (const auto& [uv, v] : m.w) {
    if (v <= 0) return "nonpositive pair weight";
    if ((uv.first & ~uv.second) != 0) return "pair " + std::to_string(uv.first) + " -> " + std::to_string(uv.second) + " is not monotone";
    rows[uv.first] += v;
    cols[uv.second] += v;
  }
  for (const auto& [x, v] : m.left) {
    if (v < 0) return "negative left weight";
    const auto it = rows.find(x);
    if ((it == rows.end() ? Rational(0) : it->second) != v) return "row sum mismatch at " + std::to_string(x);
  }
  for (const auto& [x, v] : m.right) {
    if (v < 0) return "negative right weight";
    const auto it = cols.find(x);
    if ((it == cols.end() ? Rational(0) : it->second) != v) return "column sum mismatch at " + std::to_string(x);
  }
  for (const auto& [x, v] : rows)
    if (!m.left.count(x)) return "row outside left support at " + std::to_string(x);
  for (const auto& [x, v] : cols)
    if (!m.right.count(x)) return "column outside right support at " + std::to_string(x);
  return {};
}

inline bool is_valid(const FracMatching& m) { return matching_error(m).empty(); }

inline void require_valid(const FracMatching& m, const char* who) {
  const auto err = matching_error(m);
  if (!err.empty()) throw std::logic_error(std::string(who) + ": " + err);
}

struct FracSolveResult {
  bool feasible = false;
  std::optional<FracMatching> matching;
  std::vector<std::uint32_t> violator;  // S with w_U(S) > w_V(N(S)) when infeasible
  Rational deficit;                     // w_U(S) - w_V(N(S))
};

namespace detail {

template <class Cap>
Cap to_cap(const BigInt& v) {
  if constexpr (std::is_same_v<Cap, BigInt>) {
    return v;
  } else {
    return static_cast<Cap>(v.get_si());
  }
}

template <class Cap>
FracSolveResult solve_scaled(const std::vector<std::pair<std::uint32_t, Rational>>& U, const std::vector<std::pair<std::uint32_t, Rational>>& V,
                             const BigInt& L, const BigInt& total_scaled) {
  const int nu = static_cast<int>(U.size()), nv = static_cast<int>(V.size());
  const int src = nu + nv, snk = src + 1;
  MaxFlow<Cap> net(nu + nv + 2);
  const Cap inf = to_cap<Cap>(total_scaled + 1);
  for (int i = 0; i < nu; ++i) net.add_edge(src, i, to_cap<Cap>(BigInt(U[static_cast<std::size_t>(i)].second * L)));
  for (int j = 0; j < nv; ++j) net.add_edge(nu + j, snk, to_cap<Cap>(BigInt(V[static_cast<std::size_t>(j)].second * L)));
  std::vector<std::pair<int, std::pair<int, int>>> arcs;
  for (int i = 0; i < nu; ++i)
    for (int j = 0; j < nv; ++j)
      if ((U[static_cast<std::size_t>(i)].first & ~V[static_cast<std::size_t>(j)].first) == 0) arcs.push_back({net.add_edge(i, nu + j, inf), {i, j}});
  const Cap flow = net.max_flow(src, snk);

  FracSolveResult res;
  BigInt fb;
  if constexpr (std::is_same_v<Cap, BigInt>) {
    fb = flow;
  } else {
    fb = BigInt(static_cast<long>(flow));
  }
  if (fb == total_scaled) {
    res.feasible = true;
    FracMatching m;
    for (const auto& [x, v] : U) m.left[x] = v;
    for (const auto& [x, v] : V) m.right[x] = v;
    for (const auto& [id, ij] : arcs) {
      const Cap f = net.flow(id);
      if (f > 0) {
        BigInt fv;
        if constexpr (std::is_same_v<Cap, BigInt>) {
          fv = f;
        } else {
          fv = BigInt(static_cast<long>(f));
        }
        m.w[{U[static_cast<std::size_t>(ij.first)].first, V[static_cast<std::size_t>(ij.second)].first}] = ratio(fv, L);
      }
    }
    res.matching = std::move(m);
    return res;
  }
  // Residual-reachable left vertices form a Hall violator; their neighbourhood is reachable too.
  const auto side = net.source_side(src);
  Rational ws = 0, wn = 0;
  for (int i = 0; i < nu; ++i)
    if (side[static_cast<std::size_t>(i)]) {
      res.violator.push_back(U[static_cast<std::size_t>(i)].first);
      ws += U[static_cast<std::size_t>(i)].second;
    }
  for (int j = 0; j < nv; ++j) {
    bool hit = false;
    for (auto u : res.violator)
      if ((u & ~V[static_cast<std::size_t>(j)].first) == 0) {
        hit = true;
        break;
      }
    if (hit) wn += V[static_cast<std::size_t>(j)].second;
  }
  res.deficit = ws - wn;
  return res;
}

}  // namespace detail

/// Decides w_U <~ w_V exactly: max-flow with capacities scaled by the lcm of all denominators.
inline FracSolveResult frac_matching_solve(const WeightFn& wU, const WeightFn& wV) {
  const Rational mU = total_mass(wU), mV = total_mass(wV);
  if (mU != mV) throw std::invalid_argument("frac_matching_solve: total masses differ (" + to_fraction_string(mU) + " vs " + to_fraction_string(mV) + ")");
  std::vector<std::pair<std::uint32_t, Rational>> U, V;
  BigInt L = 1;
  for (const auto& [x, v] : wU) {
    if (v < 0) throw std::invalid_argument("frac_matching_solve: negative weight");
    if (v > 0) {
      U.emplace_back(x, v);
      L = lcm(L, v.get_den());
    }
  }
  for (const auto& [x, v] : wV) {
    if (v < 0) throw std::invalid_argument("frac_matching_solve: negative weight");
    if (v > 0) {
      V.emplace_back(x, v);
      L = lcm(L, v.get_den());
    }
  }
  const BigInt total_scaled(mU * L);
  // int64 when every partial sum, and the infinite arcs, stay below 2^62.
  if (mpz_sizeinbase(total_scaled.get_mpz_t(), 2) <= 61) return detail::solve_scaled<std::int64_t>(U, V, L, total_scaled);
  return detail::solve_scaled<BigInt>(U, V, L, total_scaled);
}

/// w(u, r) = sum_v w1(u, v) w2(v, r) / w_V(v).
inline FracMatching compose(const FracMatching& a, const FracMatching& b) {
  if (drop_zeros(a.right) != drop_zeros(b.left)) throw std::invalid_argument("compose: middle weights differ");
  std::map<std::uint32_t, std::vector<std::pair<std::uint32_t, Rational>>> out_of;
  for (const auto& [vr, x] : b.w) out_of[vr.first].emplace_back(vr.second, x);
  FracMatching c;
  c.left = a.left;
  c.right = b.right;
  for (const auto& [uv, x] : a.w) {
    const Rational scale = x / a.right.at(uv.second);
    for (const auto& [r, y] : out_of[uv.second]) c.w[{uv.first, r}] += scale * y;
  }
  require_valid(c, "compose");
  return c;
}

/// p w1 + q w2 with endpoint weights mixed the same way.
inline FracMatching mix(const FracMatching& a, const FracMatching& b, const Rational& p, const Rational& q) {
  if (p < 0 || q < 0) throw std::invalid_argument("mix: coefficients must be nonnegative");
  FracMatching c;
  c.left = drop_zeros(added(scaled(a.left, p), scaled(b.left, q)));
  c.right = drop_zeros(added(scaled(a.right, p), scaled(b.right, q)));
  for (const auto& [uv, x] : a.w)
    if (p != 0) c.w[uv] += p * x;
  for (const auto& [uv, x] : b.w)
    if (q != 0) c.w[uv] += q * x;
  require_valid(c, "mix");
  return c;
}

/// Coupling of mu_k and mu_k' along a uniformly random monotone path.
inline FracMatching slice_coupling(int n, int k, int k2) {
  if (k < 0 || k2 > n || k > k2) throw std::invalid_argument("slice_coupling: need 0 <= k <= k' <= n");
  FracMatching m;
  m.left = slice_measure(n, k);
  m.right = slice_measure(n, k2);
  const Rational v = ratio(factorial_big(static_cast<unsigned>(k)) * factorial_big(static_cast<unsigned>(k2 - k)) * factorial_big(static_cast<unsigned>(n - k2)),
                           factorial_big(static_cast<unsigned>(n)));
  for (const auto& [x, wx] : m.left)
    for_each_superset_in_weights(x, n, k2, k2, [&](std::uint32_t y) { m.w.emplace(std::make_pair(x, y), v); });
  return m;
}

/// Identity coupling of w with itself.
inline FracMatching identity_matching(const WeightFn& w) {
  FracMatching m;
  m.left = drop_zeros(w);
  m.right = m.left;
  for (const auto& [x, v] : m.left) m.w[{x, x}] = v;
  return m;
}

}  // namespace monoembed
