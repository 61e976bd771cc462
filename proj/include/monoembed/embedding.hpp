#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "bits.hpp"
#include "random.hpp"
#include "rational.hpp"

namespace monoembed {

inline constexpr int kMaxPhiTableBits = 22;
inline constexpr std::size_t kMaxOmegaAtoms = std::size_t{1} << 16;

/// One outcome of the Omega distribution: its probability and Psi_omega(0..m-1) as bitmasks.
struct OmegaAtom {
  Rational prob;
  std::vector<std::uint64_t> psi;
};

/// (phi, Psi, P, mu1[, mu2]) with phi: {0,1}^r -> [m]. A relaxed embedding carries mu2 on the cube.
class LocalEmbedding {
 public:
  enum class Kind { And, Complement, Product, Threshold, Explicit };

  static std::shared_ptr<const LocalEmbedding> and_embedding(int r) {
    if (r < 1 || r > 62) throw std::invalid_argument("and_embedding: r must lie in [1,62]");
    auto e = std::make_shared<LocalEmbedding>(Kind::And, r, 2);
    e->mu1_ = {1 - pow2_inverse(static_cast<unsigned>(r)), pow2_inverse(static_cast<unsigned>(r))};
    e->finish();
    return e;
  }

  static std::shared_ptr<const LocalEmbedding> complement(std::shared_ptr<const LocalEmbedding> c) {
    if (c->m_ != 2) throw std::invalid_argument("complement_embedding: binary alphabet required");
    if (c->relaxed()) throw std::invalid_argument("complement_embedding: relaxed input not supported");
    auto e = std::make_shared<LocalEmbedding>(Kind::Complement, c->r_, 2);
    e->mu1_ = {c->mu1_[1], c->mu1_[0]};
    e->children_ = {std::move(c)};
    e->finish();
    return e;
  }

  static std::shared_ptr<const LocalEmbedding> product(std::shared_ptr<const LocalEmbedding> a, std::shared_ptr<const LocalEmbedding> b) {
    if (a->m_ != 2 || b->m_ != 2) throw std::invalid_argument("product_embedding: binary alphabet required");
    if (a->relaxed() || b->relaxed()) throw std::invalid_argument("product_embedding: relaxed input not supported");
    const Rational p1 = a->mu1_[1], p2 = b->mu1_[1];
    if (p1 * p2 == 1) throw std::invalid_argument("product_embedding: degenerate biases");
    auto e = std::make_shared<LocalEmbedding>(Kind::Product, a->r_ + b->r_, 2);
    e->mu1_ = {1 - p1 * p2, p1 * p2};
    const Rational z = 1 - p1 * p2;
    e->pair_prob_ = {(1 - p1) * (1 - p2) / z, (1 - p1) * p2 / z, p1 * (1 - p2) / z};
    e->children_ = {std::move(a), std::move(b)};
    e->finish();
    return e;
  }

  /// T(x) = #{j : |x| > t_j}, requires 0 <= t_1 < ... < t_{m-1} <= r-1.
  static std::shared_ptr<const LocalEmbedding> threshold(int r, std::vector<int> t) {
    const int m = static_cast<int>(t.size()) + 1;
    if (r < 1) throw std::invalid_argument("threshold: r must be positive");
    for (std::size_t j = 0; j < t.size(); ++j) {
      if (t[j] < 0 || t[j] > r - 1) throw std::invalid_argument("threshold: every preimage must be nonempty");
      if (j > 0 && t[j] <= t[j - 1]) throw std::invalid_argument("threshold: thresholds must increase");
    }
    auto e = std::make_shared<LocalEmbedding>(Kind::Threshold, r, m);
    e->thresholds_ = std::move(t);
    BigInt total = 1;
    total <<= static_cast<unsigned>(r);
    e->mu1_.assign(static_cast<std::size_t>(m), 0);
    e->layer_size_.assign(static_cast<std::size_t>(m), 0);
    for (int w = 0; w <= r; ++w) e->layer_size_[static_cast<std::size_t>(e->level_of_weight(w))] += binomial_big(static_cast<unsigned>(r), static_cast<unsigned>(w));
    for (int a = 0; a < m; ++a) e->mu1_[static_cast<std::size_t>(a)] = ratio(e->layer_size_[static_cast<std::size_t>(a)], total);
    e->finish();
    return e;
  }

  /// Explicit table and Omega atoms; mu1 given. mu2 (size 2^r) makes it relaxed.
  static std::shared_ptr<const LocalEmbedding> explicit_embedding(int r, int m, std::vector<std::uint8_t> phi, std::vector<OmegaAtom> atoms,
                                                                   std::vector<Rational> mu1,
                                                                   std::optional<std::vector<Rational>> mu2 = std::nullopt) {
    if (r < 1 || r > kMaxPhiTableBits) throw std::invalid_argument("explicit embedding: r out of range");
    if (m < 2 || m > 255) throw std::invalid_argument("explicit embedding: m out of range");
    if (phi.size() != (std::size_t{1} << r)) throw std::invalid_argument("explicit embedding: phi table length must be 2^r");
    if (mu1.size() != static_cast<std::size_t>(m)) throw std::invalid_argument("explicit embedding: mu1 must have m entries");
    if (mu2 && mu2->size() != (std::size_t{1} << r)) throw std::invalid_argument("explicit embedding: mu2 must have 2^r entries");
    if (atoms.empty()) throw std::invalid_argument("explicit embedding: Omega is empty");
    for (auto v : phi)
      if (v >= m) throw std::invalid_argument("explicit embedding: phi value out of range");
    for (const auto& at : atoms) {
      if (at.psi.size() != static_cast<std::size_t>(m)) throw std::invalid_argument("explicit embedding: psi needs m values");
      if (at.prob <= 0) throw std::invalid_argument("explicit embedding: atom probabilities must be positive");
      for (auto v : at.psi)
        if (v >> r) throw std::invalid_argument("explicit embedding: psi value exceeds r bits");
    }
    auto e = std::make_shared<LocalEmbedding>(Kind::Explicit, r, m);
    e->table_ = std::move(phi);
    e->atoms_ = std::move(atoms);
    e->mu1_ = std::move(mu1);
    e->mu2_ = std::move(mu2);
    e->finish();
    return e;
  }

  /// Copy with phi and/or mu1 replaced (certificates, mutation tests).
  static std::shared_ptr<const LocalEmbedding> with_overrides(const LocalEmbedding& base, std::optional<std::vector<std::uint8_t>> phi,
                                                              std::optional<std::vector<Rational>> mu1) {
    auto e = std::make_shared<LocalEmbedding>(base);
    if (phi) {
      if (base.r_ > kMaxPhiTableBits || phi->size() != (std::size_t{1} << base.r_)) throw std::invalid_argument("with_overrides: table length must be 2^r");
      for (auto v : *phi)
        if (v >= base.m_) throw std::invalid_argument("with_overrides: value out of range");
      if (*phi != base.phi_table()) e->override_ = std::move(*phi);
    }
    if (mu1) {
      if (mu1->size() != static_cast<std::size_t>(base.m_)) throw std::invalid_argument("with_overrides: mu1 must have m entries");
      e->mu1_ = std::move(*mu1);
    }
    return e;
  }

  static std::shared_ptr<const LocalEmbedding> with_phi(const LocalEmbedding& base, std::vector<std::uint8_t> phi) {
    return with_overrides(base, std::move(phi), std::nullopt);
  }

  LocalEmbedding(Kind kind, int r, int m) : kind_(kind), r_(r), m_(m) {}

  Kind kind() const noexcept { return kind_; }
  int r() const noexcept { return r_; }
  int m() const noexcept { return m_; }
  const std::vector<Rational>& mu1() const noexcept { return mu1_; }
  const std::optional<std::vector<Rational>>& mu2() const noexcept { return mu2_; }
  bool relaxed() const noexcept { return mu2_.has_value(); }
  const std::vector<int>& thresholds() const noexcept { return thresholds_; }
  const std::vector<std::shared_ptr<const LocalEmbedding>>& children() const noexcept { return children_; }
  const std::vector<OmegaAtom>& explicit_atoms() const noexcept { return atoms_; }
  bool has_phi_override() const noexcept { return !override_.empty(); }
  std::uint64_t mask() const noexcept { return low_mask(r_); }

  /// phi on an r-bit mask (r <= 64).
  int phi(std::uint64_t x) const {
    if (!override_.empty()) return override_[x];
    if (!table_.empty()) return table_[x];
    return eval_mask(x);
  }

  /// phi on bits [offset, offset + r) of v.
  int phi(const BitVector& v, std::size_t offset) const { return eval_bv(v, offset, false); }

  /// Full phi table, r <= 22.
  std::vector<std::uint8_t> phi_table() const {
    if (r_ > kMaxPhiTableBits) throw std::length_error("phi_table: r too large");
    std::vector<std::uint8_t> t(std::size_t{1} << r_);
    for (std::uint64_t x = 0; x < t.size(); ++x) t[x] = static_cast<std::uint8_t>(phi(x));
    return t;
  }

  /// Draws omega ~ P and returns Psi_omega(0), ..., Psi_omega(m-1).
  std::vector<BitVector> sample_psi(Rng& rng) const {
    std::vector<BitVector> out(static_cast<std::size_t>(m_), BitVector(static_cast<std::size_t>(r_)));
    sample_into(rng, out, 0);
    return out;
  }

  /// Distinct Psi-tuples with their total probability; nullopt if more than `limit` or r > 62.
  std::optional<std::vector<OmegaAtom>> enumerate_omega(std::size_t limit = kMaxOmegaAtoms) const {
    if (r_ > 62) return std::nullopt;
    switch (kind_) {
      case Kind::Explicit: return atoms_;
      case Kind::And: {
        if (r_ > 16) return std::nullopt;
        const std::uint64_t full = mask();
        std::vector<OmegaAtom> out;
        const Rational pr(BigInt(1), BigInt(full));
        for (std::uint64_t w = 0; w < full; ++w) out.push_back({pr, {w, full}});
        return out;
      }
      case Kind::Complement: {
        auto c = children_[0]->enumerate_omega(limit);
        if (!c) return std::nullopt;
        for (auto& at : *c) {
          std::swap(at.psi[0], at.psi[1]);
          for (auto& v : at.psi) v = ~v & mask();
        }
        return c;
      }
      case Kind::Product: {
        auto a = children_[0]->enumerate_omega(limit);
        if (!a) return std::nullopt;
        auto b = children_[1]->enumerate_omega(limit);
        if (!b) return std::nullopt;
        if (a->size() * b->size() * 3 > limit * 8) return std::nullopt;
        const int r1 = children_[0]->r_;
        std::map<std::vector<std::uint64_t>, Rational> merged;
        static constexpr int kPairs[3][2] = {{0, 0}, {0, 1}, {1, 0}};
        for (const auto& x : *a)
          for (const auto& y : *b)
            for (int k = 0; k < 3; ++k) {
              if (pair_prob_[static_cast<std::size_t>(k)] == 0) continue;
              std::vector<std::uint64_t> psi{x.psi[static_cast<std::size_t>(kPairs[k][0])] | (y.psi[static_cast<std::size_t>(kPairs[k][1])] << r1),
                                             x.psi[1] | (y.psi[1] << r1)};
              merged[psi] += x.prob * y.prob * pair_prob_[static_cast<std::size_t>(k)];
              if (merged.size() > limit) return std::nullopt;
            }
        std::vector<OmegaAtom> out;
        for (auto& [psi, pr] : merged) out.push_back({pr, psi});
        return out;
      }
      case Kind::Threshold: return enumerate_threshold(limit);
    }
    return std::nullopt;
  }

  /// marg[a][x] = P_omega(Psi_omega(a) = x), exact, r <= 16.
  std::vector<std::vector<Rational>> psi_marginals() const {
    if (r_ > 16) throw std::length_error("psi_marginals: r too large");
    const std::size_t N = std::size_t{1} << r_;
    std::vector<std::vector<Rational>> marg(static_cast<std::size_t>(m_), std::vector<Rational>(N, 0));
    switch (kind_) {
      case Kind::Explicit:
        for (const auto& at : atoms_)
          for (int a = 0; a < m_; ++a) marg[static_cast<std::size_t>(a)][at.psi[static_cast<std::size_t>(a)]] += at.prob;
        break;
      case Kind::And: {
        const Rational pr(BigInt(1), BigInt(static_cast<unsigned long>(N - 1)));
        for (std::size_t x = 0; x + 1 < N; ++x) marg[0][x] = pr;
        marg[1][N - 1] = 1;
        break;
      }
      case Kind::Complement: {
        auto c = children_[0]->psi_marginals();
        for (int a = 0; a < 2; ++a)
          for (std::size_t x = 0; x < N; ++x) marg[static_cast<std::size_t>(a)][x] = c[static_cast<std::size_t>(1 - a)][~x & (N - 1)];
        break;
      }
      case Kind::Product: {
        auto m1 = children_[0]->psi_marginals();
        auto m2 = children_[1]->psi_marginals();
        const int r1 = children_[0]->r_;
        const std::size_t N1 = std::size_t{1} << r1;
        for (std::size_t x = 0; x < N; ++x) {
          const std::size_t lo = x & (N1 - 1), hi = x >> r1;
          marg[1][x] = m1[1][lo] * m2[1][hi];
          marg[0][x] = pair_prob_[0] * m1[0][lo] * m2[0][hi] + pair_prob_[1] * m1[0][lo] * m2[1][hi] + pair_prob_[2] * m1[1][lo] * m2[0][hi];
        }
        break;
      }
      case Kind::Threshold:
        for (std::size_t x = 0; x < N; ++x) {
          const int a = level_of_weight(popcount(x));
          marg[static_cast<std::size_t>(a)][x] = Rational(BigInt(1), layer_size_[static_cast<std::size_t>(a)]);
        }
        break;
    }
    return marg;
  }

  /// T(w) for the threshold kind.
  int level_of_weight(int w) const {
    int a = 0;
    for (int t : thresholds_) a += w > t ? 1 : 0;
    return a;
  }

 private:
  void finish() {
    if (kind_ == Kind::Explicit) build_sampler();
  }

  int eval_mask(std::uint64_t x) const {
    switch (kind_) {
      case Kind::And: return x == mask() ? 1 : 0;
      case Kind::Complement: return 1 - children_[0]->phi(~x & mask());
      case Kind::Product: {
        const int r1 = children_[0]->r_;
        return children_[0]->phi(x & low_mask(r1)) && children_[1]->phi(x >> r1) ? 1 : 0;
      }
      case Kind::Threshold: return level_of_weight(popcount(x));
      case Kind::Explicit: return table_[x];
    }
    return 0;
  }

  int eval_bv(const BitVector& v, std::size_t off, bool neg) const {
    if (r_ <= 62) {
      std::uint64_t x = v.extract(off, r_);
      if (neg) x = ~x & mask();
      return phi(x);
    }
    switch (kind_) {
      case Kind::And: {
        const std::size_t c = v.count_range(off, static_cast<std::size_t>(r_));
        return (neg ? c == 0 : c == static_cast<std::size_t>(r_)) ? 1 : 0;
      }
      case Kind::Complement: return 1 - children_[0]->eval_bv(v, off, !neg);
      case Kind::Product:
        return children_[0]->eval_bv(v, off, neg) && children_[1]->eval_bv(v, off + static_cast<std::size_t>(children_[0]->r_), neg) ? 1 : 0;
      case Kind::Threshold: {
        std::size_t c = v.count_range(off, static_cast<std::size_t>(r_));
        if (neg) c = static_cast<std::size_t>(r_) - c;
        return level_of_weight(static_cast<int>(c));
      }
      case Kind::Explicit: break;
    }
    throw std::logic_error("eval_bv: unsupported");
  }

  // Writes Psi_omega(a) into out[a] at bit offset off.
  void sample_into(Rng& rng, std::vector<BitVector>& out, std::size_t off) const {
    switch (kind_) {
      case Kind::And: {
        for (int i = 0; i < r_; ++i) out[1].set(off + static_cast<std::size_t>(i), true);
        // Uniform over {0,1}^r minus the all-ones point, by rejection.
        while (true) {
          bool all = true;
          for (int i = 0; i < r_; ++i) {
            const bool b = coin(rng);
            out[0].set(off + static_cast<std::size_t>(i), b);
            all = all && b;
          }
          if (!all) break;
        }
        return;
      }
      case Kind::Complement: {
        std::vector<BitVector> tmp(2, BitVector(static_cast<std::size_t>(r_)));
        children_[0]->sample_into(rng, tmp, 0);
        for (int a = 0; a < 2; ++a)
          for (int i = 0; i < r_; ++i) out[static_cast<std::size_t>(a)].set(off + static_cast<std::size_t>(i), !tmp[static_cast<std::size_t>(1 - a)].get(static_cast<std::size_t>(i)));
        return;
      }
      case Kind::Product: {
        const auto& A = *children_[0];
        const auto& B = *children_[1];
        std::vector<BitVector> ta(2, BitVector(static_cast<std::size_t>(A.r_))), tb(2, BitVector(static_cast<std::size_t>(B.r_)));
        A.sample_into(rng, ta, 0);
        B.sample_into(rng, tb, 0);
        std::discrete_distribution<int> pick({pair_prob_[0].get_d(), pair_prob_[1].get_d(), pair_prob_[2].get_d()});
        static constexpr int kPairs[3][2] = {{0, 0}, {0, 1}, {1, 0}};
        const int k = pick(rng);
        for (int i = 0; i < A.r_; ++i) {
          out[1].set(off + static_cast<std::size_t>(i), ta[1].get(static_cast<std::size_t>(i)));
          out[0].set(off + static_cast<std::size_t>(i), ta[static_cast<std::size_t>(kPairs[k][0])].get(static_cast<std::size_t>(i)));
        }
        for (int i = 0; i < B.r_; ++i) {
          out[1].set(off + static_cast<std::size_t>(A.r_ + i), tb[1].get(static_cast<std::size_t>(i)));
          out[0].set(off + static_cast<std::size_t>(A.r_ + i), tb[static_cast<std::size_t>(kPairs[k][1])].get(static_cast<std::size_t>(i)));
        }
        return;
      }
      case Kind::Threshold: {
        // Random monotone path (permutation) and per-level weights t_a ~ |z|, z uniform on T^{-1}(a).
        std::vector<int> perm(static_cast<std::size_t>(r_));
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        for (int a = 0; a < m_; ++a) {
          const int lo = a == 0 ? 0 : thresholds_[static_cast<std::size_t>(a - 1)] + 1;
          const int hi = a == m_ - 1 ? r_ : thresholds_[static_cast<std::size_t>(a)];
          std::vector<double> w;
          const double base = std::lgamma(r_ + 1.0);
          double mx = -1e300;
          for (int k = lo; k <= hi; ++k) mx = std::max(mx, base - std::lgamma(k + 1.0) - std::lgamma(r_ - k + 1.0));
          for (int k = lo; k <= hi; ++k) w.push_back(std::exp(base - std::lgamma(k + 1.0) - std::lgamma(r_ - k + 1.0) - mx));
          const int t = lo + std::discrete_distribution<int>(w.begin(), w.end())(rng);
          for (int i = 0; i < t; ++i) out[static_cast<std::size_t>(a)].set(off + static_cast<std::size_t>(perm[static_cast<std::size_t>(i)]), true);
        }
        return;
      }
      case Kind::Explicit: {
        const double u = std::uniform_real_distribution<double>(0.0, sampler_cdf_.back())(rng);
        std::size_t k = static_cast<std::size_t>(std::upper_bound(sampler_cdf_.begin(), sampler_cdf_.end(), u) - sampler_cdf_.begin());
        if (k >= atoms_.size()) k = atoms_.size() - 1;
        for (int a = 0; a < m_; ++a)
          for (int i = 0; i < r_; ++i) out[static_cast<std::size_t>(a)].set(off + static_cast<std::size_t>(i), (atoms_[k].psi[static_cast<std::size_t>(a)] >> i) & 1u);
        return;
      }
    }
  }

  void build_sampler() {
    double acc = 0;
    std::vector<double> cdf;
    for (const auto& at : atoms_) {
      acc += at.prob.get_d();
      cdf.push_back(acc);
    }
    sampler_cdf_ = std::move(cdf);
  }

  std::optional<std::vector<OmegaAtom>> enumerate_threshold(std::size_t limit) const {
    if (r_ > 20) return std::nullopt;
    std::vector<OmegaAtom> out;
    std::vector<int> lo(static_cast<std::size_t>(m_)), hi(static_cast<std::size_t>(m_));
    for (int a = 0; a < m_; ++a) {
      lo[static_cast<std::size_t>(a)] = a == 0 ? 0 : thresholds_[static_cast<std::size_t>(a - 1)] + 1;
      hi[static_cast<std::size_t>(a)] = a == m_ - 1 ? r_ : thresholds_[static_cast<std::size_t>(a)];
    }
    std::vector<int> w(static_cast<std::size_t>(m_));
    std::vector<std::uint64_t> chain(static_cast<std::size_t>(m_));
    bool overflow = false;
    // For each weight tuple, the chain probability is prod P(t_a = w_a) / multinomial.
    auto weights_rec = [&](auto&& self, int a) -> void {
      if (overflow) return;
      if (a == m_) {
        Rational pw = 1;
        for (int b = 0; b < m_; ++b)
          pw *= ratio(binomial_big(static_cast<unsigned>(r_), static_cast<unsigned>(w[static_cast<std::size_t>(b)])), layer_size_[static_cast<std::size_t>(b)]);
        BigInt multi = factorial_big(static_cast<unsigned>(r_));
        int prev = 0;
        for (int b = 0; b < m_; ++b) {
          multi /= factorial_big(static_cast<unsigned>(w[static_cast<std::size_t>(b)] - prev));
          prev = w[static_cast<std::size_t>(b)];
        }
        multi /= factorial_big(static_cast<unsigned>(r_ - prev));
        const Rational pr = pw / Rational(multi);
        auto chain_rec = [&](auto&& cself, int b, std::uint64_t prev_set) -> void {
          if (overflow) return;
          if (b == m_) {
            out.push_back({pr, chain});
            if (out.size() > limit) overflow = true;
            return;
          }
          const int need = w[static_cast<std::size_t>(b)] - popcount(prev_set);
          for_each_superset_in_weights(static_cast<std::uint32_t>(prev_set), r_, popcount(prev_set) + need, popcount(prev_set) + need,
                                       [&](std::uint32_t y) {
                                         chain[static_cast<std::size_t>(b)] = y;
                                         cself(cself, b + 1, y);
                                       });
        };
        chain_rec(chain_rec, 0, 0);
        return;
      }
      for (int k = lo[static_cast<std::size_t>(a)]; k <= hi[static_cast<std::size_t>(a)]; ++k) {
        w[static_cast<std::size_t>(a)] = k;
        self(self, a + 1);
      }
    };
    weights_rec(weights_rec, 0);
    if (overflow) return std::nullopt;
    return out;
  }

  Kind kind_;
  int r_;
  int m_;
  std::vector<Rational> mu1_;
  std::optional<std::vector<Rational>> mu2_;
  std::vector<std::shared_ptr<const LocalEmbedding>> children_;
  std::vector<Rational> pair_prob_;  // P' over (0,0),(0,1),(1,0)
  std::vector<int> thresholds_;
  std::vector<BigInt> layer_size_;
  std::vector<std::uint8_t> table_;
  std::vector<std::uint8_t> override_;
  std::vector<OmegaAtom> atoms_;
  std::vector<double> sampler_cdf_;
};

using EmbeddingPtr = std::shared_ptr<const LocalEmbedding>;
using RelaxedEmbedding = LocalEmbedding;

inline EmbeddingPtr and_embedding(int r) { return LocalEmbedding::and_embedding(r); }
inline EmbeddingPtr complement_embedding(EmbeddingPtr e) { return LocalEmbedding::complement(std::move(e)); }
inline EmbeddingPtr product_embedding(EmbeddingPtr a, EmbeddingPtr b) { return LocalEmbedding::product(std::move(a), std::move(b)); }

}  // namespace monoembed
