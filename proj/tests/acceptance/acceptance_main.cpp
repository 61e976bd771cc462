// Acceptance suite: one PASS/FAIL line per criterion. Optional arguments select criteria by number.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "monoembed/monoembed.hpp"
#include "oracles.hpp"

using namespace monoembed;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome c1_distance() {
  std::uint64_t checked = 0, bad = 0;
  const auto mu3 = ProductMeasure::uniform(Domain::cube(3));
  const auto monos3 = oracle::all_monotone(Domain::cube(3));
  for (std::uint64_t code = 0; code < 256; ++code) {
    const auto f = DenseBooleanFunction::from_rule(Domain::cube(3), [&](std::uint64_t x) { return code >> x & 1u; });
    const Rational e = distance_to_monotone(f, mu3).epsilon;
    bad += e != brute_force_distance(f, mu3) || e != oracle::distance_by_list(f, mu3, monos3);
    ++checked;
  }
  Rng rng(101);
  for (const Domain& d : {Domain::cube(4), Domain::grid(3, 2)}) {
    const auto monos = oracle::all_monotone(d);
    const auto mu = ProductMeasure::uniform(d);
    for (int i = 0; i < 1000; ++i) {
      const auto f = random_function(d, rng);
      const Rational e = distance_to_monotone(f, mu).epsilon;
      bad += e != brute_force_distance(f, mu) || e != oracle::distance_by_list(f, mu, monos);
      ++checked;
    }
  }
  return {bad == 0, std::to_string(checked) + " functions, " + std::to_string(bad) + " mismatches"};
}

Outcome c2_axioms() {
  std::vector<std::pair<std::string, EmbeddingPtr>> es;
  for (int r = 1; r <= 10; ++r) {
    es.emplace_back("and(" + std::to_string(r) + ")", and_embedding(r));
    es.emplace_back("not and(" + std::to_string(r) + ")", complement_embedding(and_embedding(r)));
    for (int m = 2; m <= std::min(r + 1, 6); ++m) es.emplace_back("threshold(" + std::to_string(r) + "," + std::to_string(m) + ")", symmetric_embedding(best_threshold_map(r, m)));
  }
  for (int a = 1; a <= 5; ++a)
    for (int b = 1; a + b <= 10; ++b) {
      es.emplace_back("and x not and", product_embedding(and_embedding(a), complement_embedding(and_embedding(b))));
      es.emplace_back("and x and", product_embedding(and_embedding(a), and_embedding(b)));
    }
  int bias_count = 0;
  for (int den = 2; den <= 64; den *= 2)
    for (int num = 1; num < den; ++num) {
      const auto b = approx_bias(Rational(num, den), Rational(1, 2), 1);
      if (b.embedding->r() > 10 || b.p_prime != Rational(num, den)) continue;
      es.emplace_back("bias", b.embedding);
      ++bias_count;
    }
  int failed = 0;
  std::string first;
  for (const auto& [name, e] : es) {
    const auto rep = verify_embedding(*e);
    if (!rep.passed() || !rep.exact()) {
      if (!failed) first = name;
      ++failed;
    }
  }
  // Digit invariants on fuzzed p.
  Rng rng(2024);
  int fuzz_bad = 0;
  for (int i = 0; i < 10000; ++i) {
    const std::uint64_t den = 2 + uniform_below(rng, 100000);
    const std::uint64_t num = 1 + uniform_below(rng, den - 1);
    const Rational p = ratio(BigInt(static_cast<unsigned long>(num)), BigInt(static_cast<unsigned long>(den)));
    const std::uint64_t n = 1 + uniform_below(rng, 16);
    const Rational delta = ratio(BigInt(1), BigInt(static_cast<unsigned long>(1 + uniform_below(rng, 16))));
    const auto b = approx_bias_digits(p, delta, n);
    const Rational bound = delta / pow(Rational(BigInt(static_cast<unsigned long>(n))), 10);
    const Rational pr = b.complemented ? 1 - p : p;
    bool ok = pr <= b.q && b.q <= pr + bound && abs(p - b.p_prime) <= bound && b.a[0] >= 1 && b.a[0] <= b.s && bias_product(b.a) == b.q;
    for (std::size_t j = 1; j < b.a.size(); ++j) ok = ok && b.a[j] >= 0 && b.a[j] <= 3;
    fuzz_bad += !ok;
  }
  std::ostringstream d;
  d << es.size() << " embeddings (" << bias_count << " bias) exact, " << failed << " failed" << (failed ? " first " + first : "") << "; 10000 fuzzed p, "
    << fuzz_bad << " digit violations";
  return {failed == 0 && fuzz_bad == 0, d.str()};
}

Outcome c3_lift() {
  const Domain d = Domain::grid(3, 2);
  const std::vector<EmbeddingPtr> certs{symmetric_embedding(best_threshold_map(4, 3)), symmetric_embedding(best_threshold_map(8, 3))};
  Rng rng(303);
  int bad = 0;
  for (int i = 0; i < 200; ++i) {
    const auto& e = certs[static_cast<std::size_t>(i % 2)];
    const auto f = random_function(d, rng);
    const auto g = lift_dense(f, *e);
    const Rational eg = distance_to_monotone(g, ProductMeasure::uniform(g.domain())).epsilon;
    const Rational ef = distance_to_monotone(f, ProductMeasure::iid(d, e->mu1())).epsilon;
    bad += eg < ef;
  }
  int mono_bad = 0, monos = 0;
  for (const auto& f : oracle::all_monotone(d))
    for (const auto& e : certs) {
      ++monos;
      mono_bad += !lift_dense(f, *e).is_monotone();
    }
  return {bad == 0 && mono_bad == 0, "200 random f (rn = 8, 16): " + std::to_string(bad) + " with eps(g) < eps(f); " + std::to_string(monos) +
                                         " monotone lifts, " + std::to_string(mono_bad) + " non-monotone"};
}

Outcome c4_kk() {
  const int n = 5;
  std::uint64_t checks = 0, bad = 0;
  long double tightest = 1e9;
  for (int k = 0; k <= n; ++k) {
    const auto slice = slice_points(n, k);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << slice.size()); ++mask) {
      std::vector<std::uint32_t> pts;
      for (std::size_t i = 0; i < slice.size(); ++i)
        if (mask >> i & 1u) pts.push_back(slice[i]);
      const auto A = SliceFamily::from_points(n, k, pts);
      for (auto dir : {ShadowDirection::Up, ShadowDirection::Down})
        for (int t = 1; t <= (dir == ShadowDirection::Up ? n - k : k); ++t) {
          const auto r = kk_check(A, t, dir);
          ++checks;
          bad += !r.holds;
          tightest = std::min(tightest, static_cast<long double>(r.lhs.get_d()) - r.rhs);
        }
    }
  }
  std::ostringstream d;
  d << checks << " (family, t, direction) checks, " << bad << " violations, min slack " << static_cast<double>(tightest);
  return {bad == 0, d.str()};
}

Outcome c5_matching() {
  Rng rng(505);
  int produced = 0, invalid = 0, agree = 0, feasible = 0;
  auto check = [&](const FracMatching& m) {
    ++produced;
    invalid += !is_valid(m);
  };
  for (int n = 1; n <= 7; ++n)
    for (int k = 0; k <= n; ++k)
      for (int k2 = k; k2 <= n; ++k2) check(slice_coupling(n, k, k2));
  for (int n = 2; n <= 6; ++n)
    for (int k = 0; k + 2 <= n; ++k) {
      const auto a = slice_coupling(n, k, k + 1), b = slice_coupling(n, k + 1, k + 2);
      check(compose(a, b));
      check(mix(a, slice_coupling(n, k, k + 2), Rational(1, 3), Rational(2, 3)));
    }
  for (int i = 0; i < 500; ++i) {
    const int n = 4;
    const std::size_t su = 1 + uniform_below(rng, 6), sv = 1 + uniform_below(rng, 6);
    WeightFn wU, wV;
    while (wU.size() < su) wU[static_cast<std::uint32_t>(uniform_below(rng, 1u << n))] = Rational(static_cast<long>(1 + uniform_below(rng, 9)));
    while (wV.size() < sv) {
      // Bias V upward so a good share of instances are feasible.
      std::uint32_t y = static_cast<std::uint32_t>(uniform_below(rng, 1u << n));
      y |= static_cast<std::uint32_t>(uniform_below(rng, 1u << n));
      wV[y] = Rational(static_cast<long>(1 + uniform_below(rng, 9)));
    }
    const Rational tu = total_mass(wU), tv = total_mass(wV);
    for (auto& [x, w] : wV) w = w * tu / tv;
    const auto res = frac_matching_solve(wU, wV);
    agree += res.feasible == oracle::hall_by_enumeration(wU, wV);
    if (res.feasible) {
      ++feasible;
      check(*res.matching);
    }
  }
  std::ostringstream d;
  d << produced << " matchings, " << invalid << " invalid; flow vs Hall agreement " << agree << "/500 (" << feasible << " feasible)";
  return {invalid == 0 && agree == 500, d.str()};
}

Outcome c6_apm() {
  const int n = 16;
  std::ostringstream d;
  bool pass = true;
  for (int m = 3; m <= 5; ++m) {
    int perfect = 0;
    std::vector<std::string> failures;
    for (std::uint64_t s = 0; s < 100; ++s) {
      Rng rng = trial_rng(600 + static_cast<std::uint64_t>(m), s);
      const auto apm = build_almost_perfect_matching(random_layered_partition(n, m, rng));
      if (apm.all_perfect)
        ++perfect;
      else
        failures.push_back(std::to_string(s) + ":" + std::to_string(*apm.first_failure));
    }
    pass = pass && perfect >= 95;
    d << "m=" << m << ": " << perfect << "/100";
    if (!failures.empty()) {
      d << " (failing pair by seed:";
      for (const auto& f : failures) d << ' ' << f;
      d << ')';
    }
    d << (m < 5 ? "; " : "");
  }
  return {pass, d.str()};
}

Outcome c7_search() {
  Rng rng(1);
  const int budget = 2000;
  const auto res = search_perfect_embedding(9, 4, rng, budget);
  if (!res.found) return {false, "no exact embedding within " + std::to_string(budget) + " attempts"};
  const auto rep = verify_embedding(*res.found->embedding);
  std::stringstream ss;
  write_certificate(ss, *res.found->embedding);
  const auto back = read_certificate(ss);
  const bool ok = rep.passed() && rep.exact() && !back->relaxed() && verify_embedding(*back).passed() && res.found->mu2_distance == 0;
  return {ok, "found after " + std::to_string(res.attempts) + " of " + std::to_string(budget) + " attempts; verifier " + (ok ? "accepts" : "rejects")};
}

Outcome c8_completeness() {
  std::uint64_t fns = 0, rejections = 0;
  const std::uint64_t trials = 10000;
  for (int n = 1; n <= 4; ++n)
    for (const auto& f : oracle::all_monotone(Domain::cube(n))) {
      ++fns;
      rejections += estimate_rejection(
                        [&](Rng& rng) {
                          return cube_pair_trial([&](const BitVector& v) { return f(v.extract(0, n)); }, static_cast<std::size_t>(n), rng);
                        },
                        trials, fns)
                        .rejections;
    }
  const auto e = symmetric_embedding(best_threshold_map(4, 3));
  for (const auto& f : oracle::all_monotone(Domain::grid(3, 2))) {
    ++fns;
    const CountingOracle base(std::make_shared<const DenseBooleanFunction>(f));
    const LiftedOracle g(base, e);
    rejections += estimate_rejection([&](Rng& rng) { return lifted_tester_trial(g, rng); }, trials, fns).rejections;
  }
  return {rejections == 0, std::to_string(fns) + " monotone functions x " + std::to_string(trials) + " trials, " + std::to_string(rejections) + " rejections"};
}

Outcome c9_soundness() {
  const int runs = 200;
  const double floor_rate = 2.0 / 3 - 1.96 * std::sqrt((2.0 / 9) / runs);
  const CountingOracle anti(Domain::cube(8), [](const Coords& x) { return x[0] == 0; });
  const Rational eps_anti = distance_to_monotone(DenseBooleanFunction::from_rule(Domain::cube(8), [](std::uint64_t x) { return (x & 1u) == 0; }),
                                                 ProductMeasure::pbiased(8, Rational(1, 3)))
                                .epsilon;
  int rej_anti = 0;
  for (int s = 0; s < runs; ++s) {
    Rng rng = trial_rng(900, static_cast<std::uint64_t>(s));
    rej_anti += pbias_pipeline(anti, Rational(1, 3), Rational(1, 4), rng).reject;
  }
  const Domain grid = Domain::grid(3, 4);
  const auto fg = DenseBooleanFunction::from_rule(grid, [&](std::uint64_t x) {
    const Coords c = grid.unrank(x);
    return (2 - static_cast<int>(c[0])) + static_cast<int>(c[1] + c[2] + c[3]) >= 4;
  });
  const Rational eps_grid = distance_to_monotone(fg, ProductMeasure::uniform(grid)).epsilon;
  Rng prng(8);
  const auto part = random_layered_partition(8, 3, prng);
  const auto apm = build_almost_perfect_matching(part);
  const auto cert = relaxed_embedding_from_apm(8, apm.phi, apm.matchings).embedding;
  const CountingOracle base(std::make_shared<const DenseBooleanFunction>(fg));
  int rej_grid = 0;
  for (int s = 0; s < runs; ++s) {
    Rng rng = trial_rng(901, static_cast<std::uint64_t>(s));
    rej_grid += hypergrid_pipeline(base, cert, eps_grid, rng).reject;
  }
  std::ostringstream d;
  d << "anti-dictator (eps " << to_fraction_string(eps_anti) << "): " << rej_anti << "/" << runs << "; inverted threshold on [3]^4 (eps "
    << to_fraction_string(eps_grid) << "): " << rej_grid << "/" << runs << "; floor " << floor_rate;
  return {rej_anti >= floor_rate * runs && rej_grid >= floor_rate * runs, d.str()};
}

Outcome c10_isoperimetry() {
  struct Form {
    std::string name;
    long double min_ratio = -1;
    int count = 0;
  };
  std::map<std::string, Form> forms;
  int positive_bad = 0, mono_bad = 0, total = 0;
  Rng rng(1010);
  auto run = [&](const DenseBooleanFunction& f, const ProductMeasure& mu) {
    ++total;
    const auto rep = isoperimetry_report(f, mu);
    auto& fm = forms[form_name(rep.form)];
    ++fm.count;
    if (rep.epsilon == 0) {
      mono_bad += rep.objective != 0 || !f.is_monotone();
      return;
    }
    if (!rep.ratio || *rep.ratio <= 0) {
      ++positive_bad;
      return;
    }
    if (fm.min_ratio < 0 || *rep.ratio < fm.min_ratio) fm.min_ratio = *rep.ratio;
  };
  // Half random functions, half lightly corrupted monotone thresholds so small eps is represented.
  for (int i = 0; i < 500; ++i) {
    const int kind = i % 3;
    Domain d = kind == 2 ? Domain::grid(3, 3) : Domain::cube(4 + static_cast<int>(uniform_below(rng, 9)));
    const ProductMeasure mu = kind == 1 ? ProductMeasure::pbiased(d.n(), Rational(static_cast<long>(1 + uniform_below(rng, 7)), 8)) : ProductMeasure::uniform(d);
    DenseBooleanFunction f;
    if (i % 2 == 0) {
      f = random_function(d, rng, 0.1 + 0.8 * std::uniform_real_distribution<double>(0, 1)(rng));
    } else {
      const int cut = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(d.n() * (d.m() - 1) + 1)));
      const auto base = DenseBooleanFunction::from_rule(d, [&](std::uint64_t x) { return d.level(x) >= cut; });
      f = corrupt(base, uniform_below(rng, 4), rng);
    }
    run(f, mu);
  }
  std::ostringstream d;
  d << total << " functions, " << positive_bad << " non-positive ratios, " << mono_bad << " monotone cases with nonzero objective; min ratio";
  for (const auto& [name, fm] : forms) d << ' ' << name << '=' << static_cast<double>(fm.min_ratio) << " (" << fm.count << ")";
  return {positive_bad == 0 && mono_bad == 0, d.str()};
}

Outcome c11_scaling() {
  const Rational p(1, 4), eps(1, 2);
  auto slope_for = [&](double kappa, bool run, std::string& rows) {
    std::vector<double> xs, ys;
    for (int n = 8; n <= 2048; n *= 2) {
      const CountingOracle f(Domain::cube(n), [](const Coords& x) { return x[0] + x[1] >= 1; });
      PipelineConfig cfg;
      cfg.kappa = kappa;
      std::uint64_t q;
      if (run) {
        Rng rng(static_cast<std::uint64_t>(n));
        const auto res = pbias_pipeline(f, p, eps, rng, cfg);
        if (res.reject || res.queries != 2 * res.trials_run) return std::nan("");
        q = res.queries;
      } else {
        const auto b = approx_bias(p, eps / 2, static_cast<std::uint64_t>(n));
        q = 2 * planned_repetitions(static_cast<std::size_t>(b.embedding->r()) * static_cast<std::size_t>(n), eps / 2, kappa);
      }
      rows += " " + std::to_string(n) + ":" + std::to_string(q);
      xs.push_back(std::log(n));
      ys.push_back(std::log(static_cast<double>(q)));
    }
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(ys.size());
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    return sxy / sxx;
  };
  std::string measured, planned;
  const double slope = slope_for(0, true, measured);
  const double slope3 = slope_for(3, false, planned);
  std::ostringstream d;
  d << "kappa 0 measured slope " << slope << " (queries" << measured << "); kappa 3 planned slope " << slope3;
  return {std::abs(slope - 0.5) <= 0.15, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"distance oracle equivalence", c1_distance},     {"embedding axioms and bias digits", c2_axioms}, {"lifting preserves distance", c3_lift},
      {"shadow inequality audit n=5", c4_kk},            {"fractional matching validator", c5_matching},  {"almost perfect matchings n=16", c6_apm},
      {"exact 9-bit embedding of [4]", c7_search},       {"tester completeness", c8_completeness},         {"tester soundness", c9_soundness},
      {"isoperimetric ratio", c10_isoperimetry},         {"query count scaling", c11_scaling}};
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && !only.count(id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += !o.pass;
    std::printf("C%-2d %s  %s: %s (%.1fs)\n", id, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures ? 1 : 0;
}
