#include <gtest/gtest.h>

#include "monoembed/bias.hpp"
#include "monoembed/distance.hpp"
#include "monoembed/lift.hpp"
#include "monoembed/threshold.hpp"
#include "monoembed/verify.hpp"
#include "oracles.hpp"

using namespace monoembed;

namespace {

// Pushforward of phi under the uniform cube measure, counted point by point.
std::vector<Rational> phi_pushforward(const LocalEmbedding& e) {
  std::vector<Rational> out(static_cast<std::size_t>(e.m()), 0);
  const std::uint64_t N = std::uint64_t{1} << e.r();
  for (std::uint64_t x = 0; x < N; ++x) out[static_cast<std::size_t>(e.phi(x))] += Rational(BigInt(1), BigInt(static_cast<unsigned long>(N)));
  return out;
}

bool phi_monotone_all_pairs(const LocalEmbedding& e) {
  const std::uint64_t N = std::uint64_t{1} << e.r();
  for (std::uint64_t x = 0; x < N; ++x)
    for (std::uint64_t y = 0; y < N; ++y)
      if ((x & ~y) == 0 && e.phi(x) > e.phi(y)) return false;
  return true;
}

void expect_marginals_agree(const LocalEmbedding& e) {
  auto atoms = e.enumerate_omega();
  ASSERT_TRUE(atoms.has_value());
  const std::size_t N = std::size_t{1} << e.r();
  std::vector<std::vector<Rational>> from_atoms(static_cast<std::size_t>(e.m()), std::vector<Rational>(N, 0));
  for (const auto& at : *atoms)
    for (int a = 0; a < e.m(); ++a) from_atoms[static_cast<std::size_t>(a)][at.psi[static_cast<std::size_t>(a)]] += at.prob;
  EXPECT_EQ(from_atoms, e.psi_marginals());
}

}  // namespace

TEST(AndEmbedding, Examples) {
  auto e1 = and_embedding(1);
  for (std::uint64_t x = 0; x < 2; ++x) EXPECT_EQ(e1->phi(x), static_cast<int>(x));
  EXPECT_EQ(e1->mu1()[1], Rational(1, 2));
  auto e2 = and_embedding(2);
  EXPECT_EQ(phi_pushforward(*e2)[1], Rational(1, 4));
  // Psi pushforward: 1/4 mass on 11 via y = 1, 3/4 spread over the other three via omega.
  auto marg = e2->psi_marginals();
  for (std::uint64_t x = 0; x < 4; ++x) {
    const Rational s = Rational(3, 4) * marg[0][x] + Rational(1, 4) * marg[1][x];
    EXPECT_EQ(s, Rational(1, 4));
  }
}

TEST(AndEmbedding, AllAxiomsExactUpToTen) {
  for (int r = 1; r <= 10; ++r) {
    auto e = and_embedding(r);
    auto rep = verify_embedding(*e);
    EXPECT_TRUE(rep.passed()) << rep.summary();
    EXPECT_TRUE(rep.exact());
    EXPECT_EQ(phi_pushforward(*e), e->mu1());
    expect_marginals_agree(*e);
  }
}

TEST(ComplementEmbedding, Examples) {
  auto c1 = complement_embedding(and_embedding(1));
  EXPECT_EQ(c1->mu1()[1], Rational(1, 2));
  for (std::uint64_t x = 0; x < 2; ++x) EXPECT_EQ(c1->phi(x), static_cast<int>(x));
  auto c2 = complement_embedding(and_embedding(2));
  EXPECT_EQ(c2->mu1()[1], Rational(3, 4));
  EXPECT_EQ(phi_pushforward(*c2)[1], Rational(3, 4));
  auto cc = complement_embedding(c2);
  EXPECT_EQ(phi_pushforward(*cc), phi_pushforward(*and_embedding(2)));
  for (std::uint64_t x = 0; x < 4; ++x) EXPECT_EQ(cc->phi(x), and_embedding(2)->phi(x));
  for (int r = 1; r <= 8; ++r) {
    auto c = complement_embedding(and_embedding(r));
    EXPECT_TRUE(verify_embedding(*c).passed());
    expect_marginals_agree(*c);
  }
}

TEST(ProductEmbedding, Examples) {
  auto q = product_embedding(and_embedding(1), and_embedding(1));
  EXPECT_EQ(q->r(), 2);
  EXPECT_EQ(q->mu1()[1], Rational(1, 4));
  auto t = product_embedding(and_embedding(1), complement_embedding(and_embedding(2)));
  EXPECT_EQ(t->r(), 3);
  EXPECT_EQ(t->mu1()[1], Rational(3, 8));
  for (const auto& e : {q, t}) {
    EXPECT_EQ(phi_pushforward(*e), e->mu1());
    auto rep = verify_embedding(*e);
    EXPECT_TRUE(rep.passed()) << rep.summary();
    EXPECT_TRUE(rep.exact());
    expect_marginals_agree(*e);
  }
}

TEST(ProductEmbedding, PushforwardMultiplies) {
  Rng rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    auto pick = [&]() -> EmbeddingPtr {
      const int r = 1 + static_cast<int>(uniform_below(rng, 3));
      auto e = and_embedding(r);
      return coin(rng) ? complement_embedding(e) : e;
    };
    auto a = pick(), b = pick();
    auto p = product_embedding(a, b);
    EXPECT_EQ(p->mu1()[1], a->mu1()[1] * b->mu1()[1]);
    EXPECT_EQ(phi_pushforward(*p)[1], a->mu1()[1] * b->mu1()[1]);
    auto rep = verify_embedding(*p);
    EXPECT_TRUE(rep.passed()) << rep.summary();
    EXPECT_TRUE(phi_monotone_all_pairs(*p));
  }
}

TEST(Verify, CorruptedPhiFails) {
  auto e = and_embedding(3);
  auto t = e->phi_table();
  t[0b011] ^= 1;
  auto bad = LocalEmbedding::with_phi(*e, t);
  auto rep = verify_embedding(*bad);
  EXPECT_FALSE(rep.passed());
  EXPECT_TRUE(!rep.axiom[0].passed || !rep.axiom[1].passed);
}

TEST(Verify, CorruptedPsiFails) {
  // and(2) with one omega atom replaced by the all-ones point.
  auto atoms = *and_embedding(2)->enumerate_omega();
  atoms[0].psi[0] = 0b11;
  auto bad = LocalEmbedding::explicit_embedding(2, 2, and_embedding(2)->phi_table(), atoms, and_embedding(2)->mu1());
  auto rep = verify_embedding(*bad);
  EXPECT_FALSE(rep.axiom[3].passed);
  EXPECT_FALSE(rep.axiom[2].passed);
}

TEST(Verify, SampledModeIsFlagged) {
  auto e = approx_bias(Rational(3, 10), Rational(1, 2), 1).embedding;
  ASSERT_GT(e->r(), 16);
  VerifyOptions opt;
  opt.samples = 20000;
  auto rep = verify_embedding(*e, opt);
  EXPECT_FALSE(rep.exact());
  EXPECT_TRUE(rep.passed()) << rep.summary();
}

TEST(ApproxBias, Examples) {
  auto h = approx_bias_digits(Rational(1, 2), Rational(1, 2), 1);
  EXPECT_EQ(h.s, 10);
  EXPECT_EQ(h.a[0], 1);
  for (std::size_t i = 1; i < h.a.size(); ++i) EXPECT_EQ(h.a[i], 0);
  EXPECT_EQ(h.p_prime, Rational(1, 2));
  auto q = approx_bias_digits(Rational(1, 4), Rational(1, 2), 1);
  EXPECT_EQ(q.a[0], 2);
  EXPECT_EQ(q.p_prime, Rational(1, 4));
  auto t = approx_bias_digits(Rational(3, 10), Rational(1, 2), 1);
  EXPECT_EQ(t.s, 10);
  const std::vector<int> prefix{1, 1, 1, 1, 0, 1};
  EXPECT_TRUE(std::equal(prefix.begin(), prefix.end(), t.a.begin()));
  EXPECT_GE(t.p_prime, Rational(3, 10));
  EXPECT_LE(t.p_prime, Rational(3, 10) + pow2_inverse(10));
  EXPECT_LT(bias_product(t.a) * (1 - pow2_inverse(10)), Rational(3, 10));
  EXPECT_EQ(bias_product(t.a), t.p_prime);
}

TEST(ApproxBias, ErrorsAndPrecision) {
  EXPECT_THROW(approx_bias_digits(Rational(0), Rational(1, 2), 1), std::invalid_argument);
  EXPECT_THROW(approx_bias_digits(Rational(1), Rational(1, 2), 1), std::invalid_argument);
  EXPECT_EQ(bias_precision(Rational(1, 2), 1), 10);
  EXPECT_EQ(bias_precision(Rational(1), 1), 1);
  EXPECT_EQ(bias_precision(Rational(1, 8), 8), 60);
}

TEST(ApproxBias, FuzzInvariants) {
  Rng rng(2718);
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t den = 2 + uniform_below(rng, 1000);
    const std::uint64_t num = 1 + uniform_below(rng, den - 1);
    const Rational p(BigInt(static_cast<unsigned long>(num)), BigInt(static_cast<unsigned long>(den)));
    const std::uint64_t n = 1 + uniform_below(rng, 6);
    const Rational delta(BigInt(1), BigInt(static_cast<unsigned long>(1 + uniform_below(rng, 8))));
    auto b = approx_bias_digits(p, delta, n);
    const Rational bound = delta / pow(Rational(BigInt(static_cast<unsigned long>(n))), 10);
    const Rational pr = b.complemented ? 1 - p : p;
    EXPECT_LE(pr, b.q);
    EXPECT_LE(b.q - pr, bound);
    EXPECT_LE(abs(p - b.p_prime), bound);
    EXPECT_GE(b.a[0], 1);
    EXPECT_LE(b.a[0], b.s);
    for (std::size_t j = 1; j < b.a.size(); ++j) {
      EXPECT_GE(b.a[j], 0);
      EXPECT_LE(b.a[j], 3);
    }
    EXPECT_EQ(bias_product(b.a), b.q);
  }
}

TEST(ApproxBias, DyadicEmbeddingsExact) {
  for (auto p : {Rational(3, 8), Rational(7, 16), Rational(5, 8), Rational(1, 8), Rational(9, 16)}) {
    auto b = approx_bias(p, Rational(1, 2), 1);
    EXPECT_EQ(b.p_prime, p);
    EXPECT_LE(b.embedding->r(), 10);
    EXPECT_EQ(b.embedding->mu1()[1], p);
    auto rep = verify_embedding(*b.embedding);
    EXPECT_TRUE(rep.passed()) << rep.summary();
    EXPECT_TRUE(rep.exact());
  }
}

TEST(Threshold, PushforwardMasses) {
  ThresholdMap T{4, {1, 3}};
  EXPECT_EQ(T.pushforward(), (std::vector<Rational>{Rational(5, 16), Rational(5, 8), Rational(1, 16)}));
  auto e = symmetric_embedding(T);
  EXPECT_EQ(phi_pushforward(*e), T.pushforward());
  auto rep = verify_embedding(*e);
  EXPECT_TRUE(rep.passed()) << rep.summary();
  EXPECT_TRUE(rep.exact());
  expect_marginals_agree(*e);
  Rng rng(10);
  for (int i = 0; i < 10000; ++i) {
    auto psi = e->sample_psi(rng);
    for (int a = 0; a < 3; ++a) ASSERT_EQ(e->phi(psi[static_cast<std::size_t>(a)], 0), a);
  }
}

TEST(Threshold, SingletonLayersAreDeterministicOnPath) {
  auto e = symmetric_embedding(ThresholdMap{2, {0, 1}});
  auto atoms = *e->enumerate_omega();
  EXPECT_EQ(atoms.size(), 2u);  // the two monotone paths 00 -> 01 -> 11 and 00 -> 10 -> 11
  for (const auto& at : atoms) {
    EXPECT_EQ(at.psi[0], 0u);
    EXPECT_EQ(std::popcount(at.psi[1]), 1);
    EXPECT_EQ(at.psi[2], 3u);
  }
  EXPECT_TRUE(verify_embedding(*e).passed());
}

TEST(Threshold, RejectsEmptyPreimage) {
  EXPECT_THROW(LocalEmbedding::threshold(3, {1, 1}), std::invalid_argument);
  EXPECT_THROW(LocalEmbedding::threshold(3, {3}), std::invalid_argument);
}

TEST(Threshold, VariousExact) {
  for (int r = 2; r <= 8; ++r)
    for (int m = 2; m <= std::min(4, r + 1); ++m) {
      auto T = best_threshold_map(r, m);
      auto e = symmetric_embedding(T);
      auto rep = verify_embedding(*e);
      EXPECT_TRUE(rep.passed()) << r << " " << m << "\n" << rep.summary();
      EXPECT_TRUE(phi_monotone_all_pairs(*e));
    }
}

TEST(BestThreshold, SmallCases) {
  auto T = best_threshold_map(2, 2);
  EXPECT_EQ(T.t, std::vector<int>{0});
  EXPECT_EQ(T.distance_to_uniform(), Rational(1, 4));
  // r = 4, m = 3: independent search over the six threshold pairs by counting points.
  Rational best = 2;
  std::vector<int> arg;
  for (int t1 = 0; t1 < 4; ++t1)
    for (int t2 = t1 + 1; t2 < 4; ++t2) {
      std::vector<Rational> mass(3, 0);
      for (std::uint32_t x = 0; x < 16; ++x) {
        const int w = std::popcount(x);
        mass[static_cast<std::size_t>((w > t1) + (w > t2))] += Rational(1, 16);
      }
      Rational d = 0;
      for (auto& v : mass) d += abs(v - Rational(1, 3));
      d /= 2;
      if (d < best) {
        best = d;
        arg = {t1, t2};
      }
    }
  auto B = best_threshold_map(4, 3);
  EXPECT_EQ(B.t, arg);
  EXPECT_EQ(B.distance_to_uniform(), best);
}

TEST(BestThreshold, ShrinksRoughlyInverseInR) {
  double worst_scaled = 0;
  for (int r = 16; r <= 32; ++r) {
    const double d = best_threshold_map(r, 3).distance_to_uniform().get_d();
    worst_scaled = std::max(worst_scaled, d * r);
  }
  // d(r) * r stays bounded across the range; the constant is recorded, not a claim.
  EXPECT_LT(worst_scaled, 4.0);
  const auto p = best_threshold_map(24, 3).pushforward();
  EXPECT_GE(kl_to_uniform(p), 0.0);
  EXPECT_GE(hellinger_sq_to_uniform(p), 0.0);
}

TEST(Lift, MonotonePreservedAndDistanceGrows) {
  auto e = and_embedding(2);
  auto f = DenseBooleanFunction::from_rule(Domain::cube(2), [](std::uint64_t x) { return std::popcount(x) == 1; });
  auto g = lift_dense(f, *e);
  const Rational eg = distance_to_monotone(g, ProductMeasure::uniform(Domain::cube(4))).epsilon;
  const Rational ef = distance_to_monotone(f, ProductMeasure::pbiased(2, Rational(1, 4))).epsilon;
  EXPECT_GE(eg, ef);
  auto c = DenseBooleanFunction::constant(Domain::cube(2), true);
  auto gc = lift_dense(c, *e);
  EXPECT_EQ(gc, DenseBooleanFunction::constant(Domain::cube(4), true));
  for (const auto& m : oracle::all_monotone(Domain::cube(2))) EXPECT_TRUE(oracle::monotone_pairwise(lift_dense(m, *e)));
}

TEST(Lift, OracleCountsOneQueryPerCall) {
  auto f = std::make_shared<DenseBooleanFunction>(
      DenseBooleanFunction::from_rule(Domain::grid(3, 2), [](std::uint64_t x) { return x >= 4; }));
  CountingOracle base(f);
  auto e = symmetric_embedding(best_threshold_map(4, 3));
  LiftedOracle g(base, e);
  auto dense = lift_dense(*f, *e);
  for (std::uint64_t x = 0; x < 256; ++x) EXPECT_EQ(g(BitVector::from_mask(x, 8)), dense(x));
  EXPECT_EQ(base.queries(), 256u);
}

TEST(Lift, SensitivityTransferExhaustive) {
  Rng rng(99);
  auto e3 = symmetric_embedding(ThresholdMap{4, {1, 2}});
  auto eb = product_embedding(and_embedding(1), complement_embedding(and_embedding(2)));
  for (int i = 0; i < 20; ++i) {
    auto f = DenseBooleanFunction::from_rule(Domain::grid(3, 3), [&](std::uint64_t) { return coin(rng); });
    EXPECT_TRUE(sensitivity_transfer_holds(f, *e3));  // rn = 12
    auto h = DenseBooleanFunction::from_rule(Domain::cube(4), [&](std::uint64_t) { return coin(rng); });
    EXPECT_TRUE(sensitivity_transfer_holds(h, *eb));  // rn = 12
  }
}

TEST(Threshold, ExactBeyondOmegaEnumeration) {
  // Omega is too large to list at r = 12; monotonicity of Psi still follows from the weight ranges.
  auto e = symmetric_embedding(best_threshold_map(12, 4));
  EXPECT_FALSE(e->enumerate_omega().has_value());
  const auto rep = verify_embedding(*e);
  EXPECT_TRUE(rep.passed()) << rep.summary();
  EXPECT_TRUE(rep.exact());
}
