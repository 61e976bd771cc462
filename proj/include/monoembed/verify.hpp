#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "embedding.hpp"

namespace monoembed {

struct AxiomResult {
  bool passed = true;
  bool exact = true;
  std::string detail;
};

/// Axioms: 1 phi and every Psi_omega monotone; 2 pushforward of phi is mu1;
/// 3 pushforward of Psi is uniform (or mu2); 4 phi o Psi_omega = id.
struct EmbeddingReport {
  AxiomResult axiom[4];
  bool passed() const { return axiom[0].passed && axiom[1].passed && axiom[2].passed && axiom[3].passed; }
  bool exact() const { return axiom[0].exact && axiom[1].exact && axiom[2].exact && axiom[3].exact; }
  std::string summary() const {
    std::ostringstream out;
    for (int i = 0; i < 4; ++i)
      out << "axiom " << i + 1 << ": " << (axiom[i].passed ? "pass" : "FAIL") << (axiom[i].exact ? " (exact)" : " (sampled)")
          << (axiom[i].detail.empty() ? "" : " - " + axiom[i].detail) << '\n';
    return out.str();
  }
};

struct VerifyOptions {
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  int exact_max_r = 16;
};

namespace detail {

inline void fail(AxiomResult& a, const std::string& why) {
  if (a.passed) a.detail = why;
  a.passed = false;
}

/// Axiom 3: sum_a mu1(a) P(Psi(a) = x) equals the cube mass at x.
inline EmbeddingReport finish_axiom3(EmbeddingReport& rep, const LocalEmbedding& e, const std::vector<std::vector<Rational>>& marg,
                                     const std::vector<Rational>& cube_mass) {
  const auto& mu1 = e.mu1();
  for (std::uint64_t x = 0; x < cube_mass.size(); ++x) {
    Rational s = 0;
    for (int a = 0; a < e.m(); ++a) s += mu1[static_cast<std::size_t>(a)] * marg[static_cast<std::size_t>(a)][x];
    if (s != cube_mass[x]) {
      fail(rep.axiom[2], "Psi pushforward at " + std::to_string(x) + " is " + to_fraction_string(s) + ", expected " + to_fraction_string(cube_mass[x]));
      break;
    }
  }
  return rep;
}

inline EmbeddingReport verify_exact(const LocalEmbedding& e, const VerifyOptions& opt) {
  EmbeddingReport rep;
  const int r = e.r(), m = e.m();
  const std::uint64_t N = std::uint64_t{1} << r;
  const auto& mu1 = e.mu1();
  std::vector<Rational> cube_mass;
  if (e.relaxed()) {
    cube_mass = *e.mu2();
  } else {
    cube_mass.assign(N, Rational(BigInt(1), BigInt(static_cast<unsigned long>(N))));
  }

  Rational mu1_total = 0;
  for (const auto& v : mu1) mu1_total += v;
  if (mu1_total != 1) fail(rep.axiom[1], "mu1 does not sum to 1");
  Rational mu2_total = 0;
  for (const auto& v : cube_mass) {
    if (v < 0) fail(rep.axiom[2], "negative cube mass");
    mu2_total += v;
  }
  if (mu2_total != 1) fail(rep.axiom[2], "cube measure does not sum to 1");

  // Axiom 1, phi on covering pairs.
  const auto table = e.phi_table();
  for (std::uint64_t x = 0; x < N && rep.axiom[0].passed; ++x)
    for (int i = 0; i < r; ++i)
      if (!(x >> i & 1u) && table[x] > table[x | (std::uint64_t{1} << i)]) {
        fail(rep.axiom[0], "phi decreases on covering pair " + std::to_string(x) + " -> " + std::to_string(x | (std::uint64_t{1} << i)));
        break;
      }

  // Axiom 2, exact pushforward.
  std::vector<Rational> push(static_cast<std::size_t>(m), 0);
  for (std::uint64_t x = 0; x < N; ++x) push[table[x]] += cube_mass[x];
  for (int a = 0; a < m; ++a)
    if (push[static_cast<std::size_t>(a)] != mu1[static_cast<std::size_t>(a)]) {
      fail(rep.axiom[1], "phi pushforward at " + std::to_string(a) + " is " + to_fraction_string(push[static_cast<std::size_t>(a)]) +
                             ", expected " + to_fraction_string(mu1[static_cast<std::size_t>(a)]));
      break;
    }

  auto atoms = e.enumerate_omega();
  std::vector<std::vector<Rational>> marg;
  if (atoms) {
    Rational total = 0;
    marg.assign(static_cast<std::size_t>(m), std::vector<Rational>(N, 0));
    for (const auto& at : *atoms) {
      total += at.prob;
      for (int a = 0; a < m; ++a) {
        const auto v = at.psi[static_cast<std::size_t>(a)];
        marg[static_cast<std::size_t>(a)][v] += at.prob;
        if (a + 1 < m && (v & ~at.psi[static_cast<std::size_t>(a + 1)])) fail(rep.axiom[0], "Psi_omega not monotone");
        if (table[v] != a) fail(rep.axiom[3], "phi(Psi_omega(" + std::to_string(a) + ")) = " + std::to_string(table[v]));
      }
    }
    if (total != 1) fail(rep.axiom[2], "Omega probabilities sum to " + to_fraction_string(total));
    rep.axiom[0].detail += rep.axiom[0].detail.empty() ? std::to_string(atoms->size()) + " omega atoms" : "";
  } else {
    marg = e.psi_marginals();
    // Support of each marginal must lie in the matching preimage: equivalent to phi o Psi = id.
    for (int a = 0; a < m && rep.axiom[3].passed; ++a)
      for (std::uint64_t x = 0; x < N; ++x)
        if (marg[static_cast<std::size_t>(a)][x] != 0 && table[x] != a) {
          fail(rep.axiom[3], "Psi(" + std::to_string(a) + ") can land at " + std::to_string(x) + " outside phi^-1");
          break;
        }
    if (e.kind() == LocalEmbedding::Kind::Threshold) {
      // Psi_omega(a) is the prefix of one random permutation of length w_a, w_a ranging over
      // (t_{a-1}, t_a]; prefixes nest for every omega iff the ranges are ordered.
      const auto& t = e.thresholds();
      for (std::size_t a = 1; a < t.size(); ++a)
        if (t[a - 1] + 1 > t[a]) fail(rep.axiom[0], "threshold weight ranges overlap");
      if (rep.axiom[0].passed) rep.axiom[0].detail = "Psi prefixes of one permutation with ordered weight ranges";
      return finish_axiom3(rep, e, marg, cube_mass);
    }
    // Psi monotonicity needs the joint law; fall back to sampling.
    rep.axiom[0].exact = false;
    Rng rng(opt.seed);
    const std::uint64_t draws = std::min<std::uint64_t>(opt.samples, 20000);
    for (std::uint64_t s = 0; s < draws && rep.axiom[0].passed; ++s) {
      auto psi = e.sample_psi(rng);
      for (int a = 0; a + 1 < m; ++a)
        if (!psi[static_cast<std::size_t>(a)].subset_of(psi[static_cast<std::size_t>(a + 1)])) fail(rep.axiom[0], "sampled Psi_omega not monotone");
    }
    if (rep.axiom[0].passed) rep.axiom[0].detail = "phi exact; Psi monotone on " + std::to_string(draws) + " sampled omega";
  }

  return finish_axiom3(rep, e, marg, cube_mass);
}

inline EmbeddingReport verify_sampled(const LocalEmbedding& e, const VerifyOptions& opt) {
  if (e.relaxed()) throw std::length_error("verify_embedding: relaxed embeddings need r <= 16");
  EmbeddingReport rep;
  for (auto& a : rep.axiom) a.exact = false;
  const int r = e.r(), m = e.m();
  Rng rng(opt.seed);
  const std::uint64_t S = opt.samples;
  const auto& mu1 = e.mu1();

  // Axiom 1 on random covering pairs; Psi monotone per sampled omega.
  std::vector<std::uint64_t> phi_counts(static_cast<std::size_t>(m), 0);
  BitVector x(static_cast<std::size_t>(r));
  for (std::uint64_t s = 0; s < S; ++s) {
    for (int i = 0; i < r; ++i) x.set(static_cast<std::size_t>(i), coin(rng));
    const int fx = e.phi(x, 0);
    ++phi_counts[static_cast<std::size_t>(fx)];
    const std::size_t i = uniform_below(rng, static_cast<std::uint64_t>(r));
    if (!x.get(i)) {
      x.set(i, true);
      if (e.phi(x, 0) < fx) fail(rep.axiom[0], "phi decreases on a sampled covering pair");
    }
  }
  // Axiom 2: frequencies within 5 sigma.
  double worst = 0;
  for (int a = 0; a < m; ++a) {
    const double p = mu1[static_cast<std::size_t>(a)].get_d();
    const double f = static_cast<double>(phi_counts[static_cast<std::size_t>(a)]) / static_cast<double>(S);
    const double tol = 5 * std::sqrt(p * (1 - p) / static_cast<double>(S)) + 1.0 / static_cast<double>(S);
    worst = std::max(worst, std::abs(f - p));
    if (std::abs(f - p) > tol) fail(rep.axiom[1], "phi frequency of " + std::to_string(a) + " deviates by " + std::to_string(std::abs(f - p)));
  }
  rep.axiom[1].detail += (rep.axiom[1].detail.empty() ? "" : "; ") + std::string("max deviation ") + std::to_string(worst);

  // Axioms 3 and 4 from y ~ mu1, omega ~ P.
  std::vector<double> w;
  for (const auto& v : mu1) w.push_back(v.get_d());
  std::discrete_distribution<int> pick(w.begin(), w.end());
  std::vector<std::uint64_t> ones(static_cast<std::size_t>(r), 0);
  for (std::uint64_t s = 0; s < S; ++s) {
    auto psi = e.sample_psi(rng);
    for (int a = 0; a < m; ++a) {
      if (a + 1 < m && !psi[static_cast<std::size_t>(a)].subset_of(psi[static_cast<std::size_t>(a + 1)])) fail(rep.axiom[0], "sampled Psi_omega not monotone");
      if (e.phi(psi[static_cast<std::size_t>(a)], 0) != a) fail(rep.axiom[3], "phi(Psi_omega(" + std::to_string(a) + ")) != " + std::to_string(a));
    }
    const int y = pick(rng);
    for (int i = 0; i < r; ++i) ones[static_cast<std::size_t>(i)] += psi[static_cast<std::size_t>(y)].get(static_cast<std::size_t>(i));
  }
  double worst_bit = 0;
  const double tol = 5 * std::sqrt(0.25 / static_cast<double>(S)) * std::sqrt(2 * std::log(std::max(2, r)));
  for (int i = 0; i < r; ++i) {
    const double f = static_cast<double>(ones[static_cast<std::size_t>(i)]) / static_cast<double>(S);
    worst_bit = std::max(worst_bit, std::abs(f - 0.5));
  }
  if (worst_bit > tol) fail(rep.axiom[2], "bit frequency deviates by " + std::to_string(worst_bit));
  rep.axiom[2].detail += (rep.axiom[2].detail.empty() ? "" : "; ") + std::string("max bit deviation ") + std::to_string(worst_bit);
  rep.axiom[3].detail += (rep.axiom[3].detail.empty() ? "" : "; ") + std::to_string(S) + " sampled omega";
  return rep;
}

}  // namespace detail

/// Exact when r <= 16 (enumeration of the cube and of Omega or closed-form Psi marginals);
/// otherwise a sampled report with every axiom flagged inexact.
inline EmbeddingReport verify_embedding(const LocalEmbedding& e, const VerifyOptions& opt = {}) {
  if (e.r() <= opt.exact_max_r) return detail::verify_exact(e, opt);
  return detail::verify_sampled(e, opt);
}

}  // namespace monoembed
