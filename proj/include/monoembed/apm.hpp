#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bipartite.hpp"
#include "bits.hpp"
#include "embedding.hpp"
#include "random.hpp"
#include "rational.hpp"

namespace monoembed {

inline constexpr int kMaxApmDim = 22;

/// Weight-ordered chunks P_1..P_m of {0,1}^n, each of size floor(2^n / m); leftovers sit on top.
struct LayeredPartition {
  int n = 0;
  int m = 0;
  std::vector<std::vector<std::uint32_t>> chunks;
  std::vector<std::uint32_t> leftover;
  std::vector<int> lo, hi, median;  // min / max / median weight per chunk

  std::uint64_t chunk_size() const { return (std::uint64_t{1} << n) / static_cast<std::uint64_t>(m); }

  /// x in P_i -> i - 1, leftover -> m - 1.
  std::vector<std::uint8_t> phi() const {
    std::vector<std::uint8_t> t(std::size_t{1} << n, static_cast<std::uint8_t>(m - 1));
    for (int i = 0; i < m; ++i)
      for (auto x : chunks[static_cast<std::size_t>(i)]) t[x] = static_cast<std::uint8_t>(i);
    return t;
  }
};

inline int median_weight(const std::vector<std::uint32_t>& pts) {
  std::vector<int> w;
  w.reserve(pts.size());
  for (auto x : pts) w.push_back(popcount(x));
  std::sort(w.begin(), w.end());
  // Smallest v with #{|x| <= v} >= |P| / 2.
  return w[(w.size() + 1) / 2 - 1];
}

/// Order by weight, shuffle within each weight layer, cut consecutive chunks.
inline LayeredPartition random_layered_partition(int n, int m, Rng& rng) {
  if (n < 0 || n > kMaxApmDim) throw std::invalid_argument("random_layered_partition: n out of range");
  if (m < 1 || m > 255 || (std::uint64_t{1} << n) < static_cast<std::uint64_t>(m)) throw std::invalid_argument("random_layered_partition: need 1 <= m <= min(2^n, 255)");
  std::vector<std::uint32_t> order;
  order.reserve(std::size_t{1} << n);
  for (int w = 0; w <= n; ++w) {
    auto layer = slice_points(n, w);
    std::shuffle(layer.begin(), layer.end(), rng);
    order.insert(order.end(), layer.begin(), layer.end());
  }
  LayeredPartition p;
  p.n = n;
  p.m = m;
  const std::size_t c = static_cast<std::size_t>(p.chunk_size());
  for (int i = 0; i < m; ++i) {
    std::vector<std::uint32_t> chunk(order.begin() + static_cast<long>(i * c), order.begin() + static_cast<long>((i + 1) * c));
    int lo = n, hi = 0;
    for (auto x : chunk) {
      lo = std::min(lo, popcount(x));
      hi = std::max(hi, popcount(x));
    }
    p.lo.push_back(lo);
    p.hi.push_back(hi);
    p.median.push_back(median_weight(chunk));
    p.chunks.push_back(std::move(chunk));
  }
  p.leftover.assign(order.begin() + static_cast<long>(static_cast<std::size_t>(m) * c), order.end());
  return p;
}

struct MonotoneMatching {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;  // (a, a') with a <= a'
  std::size_t size() const noexcept { return pairs.size(); }
};

/// Maximum matching on {(a, a') : a <= a'}; perfect iff uniform(A) <~ uniform(A').
inline MonotoneMatching max_monotone_matching(const std::vector<std::uint32_t>& A, const std::vector<std::uint32_t>& B, int n) {
  if (n < 0 || n > kMaxApmDim) throw std::invalid_argument("max_monotone_matching: n out of range");
  std::vector<int> index(std::size_t{1} << n, -1);
  int lo = n, hi = 0;
  for (std::size_t j = 0; j < B.size(); ++j) {
    if (index[B[j]] != -1) throw std::invalid_argument("max_monotone_matching: repeated point");
    index[B[j]] = static_cast<int>(j);
    lo = std::min(lo, popcount(B[j]));
    hi = std::max(hi, popcount(B[j]));
  }
  BipartiteGraph g;
  g.right = static_cast<int>(B.size());
  std::vector<int> row;
  for (auto a : A) {
    row.clear();
    if (!B.empty())
      for_each_superset_in_weights(a, n, lo, hi, [&](std::uint32_t y) {
        if (index[y] >= 0) row.push_back(index[y]);
      });
    g.add_row(row);
  }
  const auto res = hopcroft_karp(g);
  MonotoneMatching out;
  for (std::size_t i = 0; i < A.size(); ++i)
    if (res.match_left[i] >= 0) out.pairs.emplace_back(A[i], B[static_cast<std::size_t>(res.match_left[i])]);
  return out;
}

/// Perfect monotone matching from A to A', or nullopt when none exists.
inline std::optional<MonotoneMatching> perfect_matching_from_frac(const std::vector<std::uint32_t>& A, const std::vector<std::uint32_t>& B, int n) {
  if (A.size() != B.size()) throw std::invalid_argument("perfect_matching_from_frac: sizes differ");
  auto m = max_monotone_matching(A, B, n);
  if (m.size() != A.size()) return std::nullopt;
  return m;
}

struct ApmResult {
  int n = 0;
  int m = 0;
  std::vector<std::uint8_t> phi;
  std::vector<MonotoneMatching> matchings;    // E_i from phi^-1(i) to phi^-1(i+1)
  std::vector<std::uint64_t> uncovered;       // |A_i| + |A_{i+1}| - 2|E_i|
  Rational delta;                             // max_i uncovered_i / 2^n
  std::optional<int> first_failure;           // first pair without a perfect chunk matching
  bool all_perfect = false;                   // every chunk pair matched perfectly
};

/// Matches consecutive chunks. A_{m-1} also holds the leftovers, so delta counts them.
inline ApmResult build_almost_perfect_matching(const LayeredPartition& part) {
  ApmResult res;
  res.n = part.n;
  res.m = part.m;
  res.phi = part.phi();
  res.all_perfect = true;
  const std::uint64_t N = std::uint64_t{1} << part.n;
  std::uint64_t worst = 0;
  for (int i = 0; i + 1 < part.m; ++i) {
    const auto& A = part.chunks[static_cast<std::size_t>(i)];
    const auto& B = part.chunks[static_cast<std::size_t>(i + 1)];
    auto E = max_monotone_matching(A, B, part.n);
    if (E.size() != A.size()) {
      res.all_perfect = false;
      if (!res.first_failure) res.first_failure = i;
    }
    std::uint64_t a_size = A.size(), b_size = B.size();
    if (i + 1 == part.m - 1) b_size += part.leftover.size();
    const std::uint64_t unc = a_size + b_size - 2 * E.size();
    res.uncovered.push_back(unc);
    worst = std::max(worst, unc);
    res.matchings.push_back(std::move(E));
  }
  res.delta = ratio(BigInt(static_cast<unsigned long>(worst)), BigInt(static_cast<unsigned long>(N)));
  return res;
}

struct ApmEmbedding {
  EmbeddingPtr embedding;
  std::size_t paths = 0;
  Rational mu1_distance;  // TV(mu1, U_m)
  Rational mu2_distance;  // TV(mu2, U)
};

/// Chains E_0..E_{m-2} into monotone paths; full-length paths carry Omega uniformly.
/// mu2 is uniform on covered vertices (U itself when every vertex is covered) and mu1 = U_m.
inline ApmEmbedding relaxed_embedding_from_apm(int r, const std::vector<std::uint8_t>& phi, const std::vector<MonotoneMatching>& E) {
  if (r < 1 || r > kMaxApmDim) throw std::invalid_argument("relaxed_embedding_from_apm: r out of range");
  const std::size_t N = std::size_t{1} << r;
  if (phi.size() != N) throw std::invalid_argument("relaxed_embedding_from_apm: phi must have 2^r entries");
  const int m = static_cast<int>(E.size()) + 1;
  std::vector<std::int64_t> next(N, -1);
  std::vector<char> has_prev(N, 0);
  for (int i = 0; i + 1 < m; ++i)
    for (const auto& [a, b] : E[static_cast<std::size_t>(i)].pairs) {
      if (a >= N || b >= N) throw std::invalid_argument("relaxed_embedding_from_apm: point outside the cube");
      if ((a & ~b) != 0) throw std::invalid_argument("relaxed_embedding_from_apm: matched pair is not monotone");
      if (phi[a] != i || phi[b] != i + 1) throw std::invalid_argument("relaxed_embedding_from_apm: matched pair crosses the wrong levels");
      if (next[a] != -1 || has_prev[b]) throw std::invalid_argument("relaxed_embedding_from_apm: matchings share a vertex");
      next[a] = b;
      has_prev[b] = 1;
    }
  std::vector<OmegaAtom> atoms;
  for (std::uint32_t x = 0; x < N; ++x) {
    if (phi[x] != 0) continue;
    std::vector<std::uint64_t> path{x};
    while (static_cast<int>(path.size()) < m && next[path.back()] != -1) path.push_back(static_cast<std::uint64_t>(next[path.back()]));
    if (static_cast<int>(path.size()) == m) atoms.push_back(OmegaAtom{0, std::move(path)});
  }
  if (atoms.empty()) throw std::invalid_argument("relaxed_embedding_from_apm: no full-length path");
  const Rational each = ratio(BigInt(1), BigInt(static_cast<unsigned long>(atoms.size())));
  for (auto& at : atoms) at.prob = each;
  ApmEmbedding out;
  out.paths = atoms.size();
  std::vector<Rational> mu1(static_cast<std::size_t>(m), Rational(1, m));
  out.mu1_distance = 0;
  const std::size_t covered = atoms.size() * static_cast<std::size_t>(m);
  std::optional<std::vector<Rational>> mu2;
  if (covered == N) {
    out.mu2_distance = 0;
  } else {
    std::vector<Rational> v(N, 0);
    const Rational w = ratio(BigInt(1), BigInt(static_cast<unsigned long>(covered)));
    for (const auto& at : atoms)
      for (auto x : at.psi) v[x] = w;
    out.mu2_distance = 1 - ratio(BigInt(static_cast<unsigned long>(covered)), BigInt(static_cast<unsigned long>(N)));
    mu2 = std::move(v);
  }
  out.embedding = LocalEmbedding::explicit_embedding(r, m, phi, std::move(atoms), std::move(mu1), std::move(mu2));
  return out;
}

struct SearchResult {
  std::optional<ApmEmbedding> found;
  int attempts = 0;
};

/// Random layered candidates until every consecutive pair matches perfectly or the budget runs out.
inline SearchResult search_perfect_embedding(int r, int m, Rng& rng, int budget = 2000) {
  if (m < 2) throw std::invalid_argument("search_perfect_embedding: m must be at least 2");
  if (r < 1 || r > kMaxApmDim || (std::uint64_t{1} << r) % static_cast<std::uint64_t>(m) != 0)
    throw std::invalid_argument("search_perfect_embedding: m must divide 2^r");
  SearchResult res;
  for (int a = 1; a <= budget; ++a) {
    res.attempts = a;
    const auto part = random_layered_partition(r, m, rng);
    const auto apm = build_almost_perfect_matching(part);
    if (apm.all_perfect) {
      res.found = relaxed_embedding_from_apm(r, apm.phi, apm.matchings);
      return res;
    }
  }
  return res;
}

}  // namespace monoembed
