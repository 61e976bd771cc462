#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "monoembed/monoembed.hpp"

using namespace monoembed;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  std::string out;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--seed", c.seed, "base seed");
  app->add_option("--jobs", c.jobs, "worker threads")->check(CLI::Range(1u, 256u));
  app->add_option("--out", c.out, "output path (stdout when omitted)");
}

/// Writes to the --out file, or stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot write " + path);
    }
  }
  std::ostream& operator*() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

ProductMeasure pick_measure(const Domain& dom, const std::string& measure_file, bool uniform, const std::string& pbias) {
  const int chosen = !measure_file.empty() + uniform + !pbias.empty();
  if (chosen > 1) throw UsageError("choose one of --measure, --uniform, --pbias");
  if (!measure_file.empty()) {
    auto mu = read_measure_file(measure_file);
    if (!(mu.domain() == dom)) throw UsageError("measure domain does not match the function");
    return mu;
  }
  if (!pbias.empty()) {
    if (!dom.is_cube()) throw UsageError("--pbias needs a cube function");
    return ProductMeasure::pbiased(dom.n(), parse_rational(pbias));
  }
  return ProductMeasure::uniform(dom);
}

SensitivityMode parse_sensitivity(const std::string& s) {
  if (s == "covering") return SensitivityMode::Covering;
  if (s == "any") return SensitivityMode::AnyOnLine;
  throw UsageError("--sensitivity must be covering or any");
}

// ---- distance ----

struct DistanceArgs {
  Common c;
  std::string fn, measure, pbias, witness;
  bool uniform = false, brute = false;
};

int run_distance(const DistanceArgs& a) {
  const auto f = read_function_file(a.fn);
  const auto mu = pick_measure(f.domain(), a.measure, a.uniform, a.pbias);
  const auto cert = distance_to_monotone(f, mu);
  if (a.brute && brute_force_distance(f, mu) != cert.epsilon) {
    std::cerr << "brute-force distance disagrees with the min-cut value\n";
    return 1;
  }
  Output out(a.c.out);
  write_csv_header(*out, "distance", {{"fn", a.fn}, {"domain", f.domain().describe()}});
  *out << "epsilon,num,den\n";
  *out << cert.epsilon.get_d() << ',' << cert.epsilon.get_num().get_str() << ',' << cert.epsilon.get_den().get_str() << '\n';
  if (!a.witness.empty()) {
    std::ofstream w(a.witness);
    if (!w) throw UsageError("cannot write " + a.witness);
    write_function(w, cert.g);
  }
  return 0;
}

// ---- sensitivity ----

struct SensitivityArgs {
  Common c;
  std::string fn, measure, pbias, mode = "covering";
  bool uniform = false;
};

int run_sensitivity(const SensitivityArgs& a) {
  const auto f = read_function_file(a.fn);
  const auto mu = pick_measure(f.domain(), a.measure, a.uniform, a.pbias);
  const auto mode = parse_sensitivity(a.mode);
  const auto masses = sensitivity_masses(f, mu, mode);
  Output out(a.c.out);
  write_csv_header(*out, "sensitivity", {{"fn", a.fn}, {"domain", f.domain().describe()}, {"mode", a.mode},
                                          {"objective", std::to_string(static_cast<double>(talagrand_objective(f, mu, mode)))}});
  *out << "s,mass_num,mass_den\n";
  for (std::size_t s = 0; s < masses.size(); ++s)
    if (masses[s] != 0) *out << s << ',' << masses[s].get_num().get_str() << ',' << masses[s].get_den().get_str() << '\n';
  return 0;
}

// ---- isoperimetry ----

struct IsoArgs {
  Common c;
  std::string fn, kind = "cube", p, mode = "covering";
  int n = 8, m = 3;
  std::uint64_t trials = 100;
};

int run_isoperimetry(const IsoArgs& a) {
  const auto mode = parse_sensitivity(a.mode);
  std::vector<std::pair<DenseBooleanFunction, ProductMeasure>> corpus;
  if (!a.fn.empty()) {
    auto f = read_function_file(a.fn);
    auto mu = a.p.empty() ? ProductMeasure::uniform(f.domain()) : ProductMeasure::pbiased(f.domain().n(), parse_rational(a.p));
    corpus.emplace_back(std::move(f), std::move(mu));
  } else {
    if (a.kind != "cube" && a.kind != "grid") throw UsageError("--domain must be cube or grid");
    const Domain dom = a.kind == "cube" ? Domain::cube(a.n) : Domain::grid(a.m, a.n);
    if (dom.size() > (std::uint64_t{1} << 16)) throw UsageError("isoperimetry corpus limited to 2^16 points");
    const auto mu = a.p.empty() ? ProductMeasure::uniform(dom) : ProductMeasure::pbiased(a.n, parse_rational(a.p));
    for (std::uint64_t i = 0; i < a.trials; ++i) {
      Rng rng = trial_rng(a.c.seed, i);
      const double density = 0.05 + 0.9 * std::uniform_real_distribution<double>(0, 1)(rng);
      corpus.emplace_back(random_function(dom, rng, density), mu);
    }
  }
  std::vector<IsoperimetryReport> reps(corpus.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i; (i = next.fetch_add(1)) < corpus.size();) reps[i] = isoperimetry_report(corpus[i].first, corpus[i].second, mode);
  };
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < a.c.jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  Output out(a.c.out);
  write_csv_header(*out, "isoperimetry", {{"seed", std::to_string(a.c.seed)}, {"domain", corpus.front().first.domain().describe()},
                                           {"p", a.p.empty() ? "uniform" : a.p}, {"mode", a.mode}});
  *out << "index,form,eps_num,eps_den,objective,ratio\n";
  long double min_ratio = -1;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const auto& r = reps[i];
    *out << i << ',' << form_name(r.form) << ',' << r.epsilon.get_num().get_str() << ',' << r.epsilon.get_den().get_str() << ','
         << static_cast<double>(r.objective) << ',';
    if (r.ratio) {
      *out << static_cast<double>(*r.ratio);
      if (min_ratio < 0 || *r.ratio < min_ratio) min_ratio = *r.ratio;
    }
    *out << '\n';
  }
  std::cerr << "min ratio over non-monotone functions: " << (min_ratio < 0 ? std::string("n/a") : std::to_string(static_cast<double>(min_ratio))) << '\n';
  return 0;
}

// ---- embed / verify-embedding ----

struct EmbedArgs {
  Common c;
  std::string kind = "threshold", p, delta = "1/2";
  int r = 4, m = 3, n = 1;
  bool complement = false;
};

int run_embed(const EmbedArgs& a) {
  EmbeddingPtr e;
  if (a.kind == "and") {
    e = and_embedding(a.r);
  } else if (a.kind == "threshold") {
    e = symmetric_embedding(best_threshold_map(a.r, a.m));
  } else if (a.kind == "bias") {
    if (a.p.empty()) throw UsageError("--kind bias needs --p");
    const auto b = approx_bias(parse_rational(a.p), parse_rational(a.delta), static_cast<std::uint64_t>(a.n));
    std::cerr << "p' = " << to_fraction_string(b.p_prime) << ", r = " << b.embedding->r() << '\n';
    e = b.embedding;
  } else {
    throw UsageError("--kind must be and, threshold or bias");
  }
  if (a.complement) e = complement_embedding(e);
  Output out(a.c.out);
  write_certificate(*out, *e);
  return 0;
}

struct VerifyArgs {
  Common c;
  std::string cert;
  std::uint64_t samples = 100000;
};

int run_verify(const VerifyArgs& a) {
  const auto e = read_certificate_file(a.cert);
  VerifyOptions opt;
  opt.samples = a.samples;
  opt.seed = a.c.seed;
  const auto rep = verify_embedding(*e, opt);
  Output out(a.c.out);
  *out << "r=" << e->r() << " m=" << e->m() << (e->relaxed() ? " relaxed" : "") << '\n' << rep.summary();
  *out << (rep.passed() ? "certificate accepted\n" : "certificate rejected\n");
  return rep.passed() ? 0 : 1;
}

// ---- construct-apm / search-embedding ----

struct ApmArgs {
  Common c;
  int n = 16, m = 3;
  std::uint64_t seeds = 100;
  std::string cert;
};

int run_construct_apm(const ApmArgs& a) {
  if (a.seeds == 0) throw UsageError("--seeds must be positive");
  std::vector<ApmResult> res(a.seeds);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&]() {
    for (std::uint64_t i; (i = next.fetch_add(1)) < a.seeds;) {
      Rng rng = trial_rng(a.c.seed, i);
      res[i] = build_almost_perfect_matching(random_layered_partition(a.n, a.m, rng));
    }
  };
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < a.c.jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  Output out(a.c.out);
  write_csv_header(*out, "construct-apm", {{"seed", std::to_string(a.c.seed)}, {"n", std::to_string(a.n)}, {"m", std::to_string(a.m)},
                                            {"seeds", std::to_string(a.seeds)}, {"trial seed", "splitmix64(seed xor index)"}});
  *out << "seed,n,m,pair_index,matched,delta_num,delta_den,success\n";
  std::uint64_t ok = 0;
  for (std::uint64_t i = 0; i < a.seeds; ++i) {
    const auto& r = res[i];
    const std::size_t matched = static_cast<std::size_t>(std::count_if(r.matchings.begin(), r.matchings.end(), [&](const MonotoneMatching& e) {
      return e.size() == (std::uint64_t{1} << a.n) / static_cast<std::uint64_t>(a.m);
    }));
    *out << i << ',' << a.n << ',' << a.m << ',' << (r.first_failure ? *r.first_failure : -1) << ',' << matched << ',' << r.delta.get_num().get_str() << ','
         << r.delta.get_den().get_str() << ',' << (r.all_perfect ? 1 : 0) << '\n';
    ok += r.all_perfect;
  }
  std::cerr << ok << "/" << a.seeds << " seeds matched every consecutive chunk pair perfectly\n";
  if (!a.cert.empty()) {
    const auto emb = relaxed_embedding_from_apm(a.n, res[0].phi, res[0].matchings);
    write_certificate_file(a.cert, *emb.embedding);
  }
  return 0;
}

struct SearchArgs {
  Common c;
  int r = 9, m = 4, budget = 2000;
  std::string cert;
};

int run_search(const SearchArgs& a) {
  Rng rng(a.c.seed);
  const auto res = search_perfect_embedding(a.r, a.m, rng, a.budget);
  Output out(a.c.out);
  write_csv_header(*out, "search-embedding", {{"seed", std::to_string(a.c.seed)}, {"r", std::to_string(a.r)}, {"m", std::to_string(a.m)},
                                               {"budget", std::to_string(a.budget)}});
  *out << "r,m,attempts,found\n" << a.r << ',' << a.m << ',' << res.attempts << ',' << (res.found ? 1 : 0) << '\n';
  if (!res.found) return 1;
  if (!a.cert.empty()) write_certificate_file(a.cert, *res.found->embedding);
  return 0;
}

// ---- domination ----

struct DomArgs {
  Common c;
  int n = 10, k = 5, t = 1, d = 1;
  std::uint64_t s = 1, trials = 20;
  std::string side = "lower";
};

int run_domination(const DomArgs& a) {
  if (a.side != "lower" && a.side != "upper") throw UsageError("--side must be lower or upper");
  const SliceDominationParams p{a.n, a.k, a.t, a.s, a.d};
  const auto rec = slice_domination_check(p, a.c.seed, a.trials, a.side == "lower" ? DominationSide::Lower : DominationSide::Upper, a.c.jobs);
  Output out(a.c.out);
  write_csv_header(*out, "domination", {{"seed", std::to_string(a.c.seed)}, {"n", std::to_string(a.n)}, {"k", std::to_string(a.k)},
                                         {"t", std::to_string(a.t)}, {"s", std::to_string(a.s)}, {"side", a.side},
                                         {"t in asymptotic range", rec.t_in_asymptotic_range ? "yes" : "no"}});
  *out << "trial,holds\n";
  for (std::size_t i = 0; i < rec.outcome.size(); ++i) *out << i << ',' << static_cast<int>(rec.outcome[i]) << '\n';
  std::cerr << rec.successes << "/" << rec.trials << " trials dominated\n";
  return 0;
}

// ---- kk-audit ----

struct KKArgs {
  Common c;
  int n = 5;
  std::uint64_t trials = 1000;
};

int run_kk_audit(const KKArgs& a) {
  if (a.n < 1 || a.n > 20) throw UsageError("--n must lie in 1..20");
  Output out(a.c.out);
  write_csv_header(*out, "kk-audit", {{"seed", std::to_string(a.c.seed)}, {"n", std::to_string(a.n)},
                                       {"families", a.n <= 5 ? "all nonempty" : std::to_string(a.trials) + " random per slice"}});
  *out << "k,direction,t,families,violations\n";
  std::uint64_t total_bad = 0;
  for (int k = 0; k <= a.n; ++k) {
    const auto slice = slice_points(a.n, k);
    std::vector<SliceFamily> fams;
    if (a.n <= 5) {
      for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << slice.size()); ++mask) {
        std::vector<std::uint32_t> pts;
        for (std::size_t i = 0; i < slice.size(); ++i)
          if (mask >> i & 1u) pts.push_back(slice[i]);
        fams.push_back(SliceFamily::from_points(a.n, k, pts));
      }
    } else {
      for (std::uint64_t i = 0; i < a.trials; ++i) {
        Rng rng = trial_rng(a.c.seed, (static_cast<std::uint64_t>(k) << 32) | i);
        const std::uint64_t s = 1 + uniform_below(rng, slice.size());
        fams.push_back(SliceFamily::from_points(a.n, k, random_slice_subset(a.n, k, s, rng)));
      }
    }
    for (auto dir : {ShadowDirection::Up, ShadowDirection::Down}) {
      const int tmax = dir == ShadowDirection::Up ? a.n - k : k;
      for (int t = 1; t <= tmax; ++t) {
        std::uint64_t bad = 0;
        for (const auto& A : fams) bad += !kk_check(A, t, dir).holds;
        total_bad += bad;
        *out << k << ',' << (dir == ShadowDirection::Up ? "up" : "down") << ',' << t << ',' << fams.size() << ',' << bad << '\n';
      }
    }
  }
  return total_bad ? 1 : 0;
}

// ---- test ----

struct TestArgs {
  Common c;
  std::string fn, mode = "cube-uniform", p, eps = "1/4", cert;
  std::uint64_t trials = 0;
  double kappa = 3;
};

int run_test(const TestArgs& a) {
  const auto f = std::make_shared<const DenseBooleanFunction>(read_function_file(a.fn));
  const CountingOracle base(f);
  const Rational eps = parse_rational(a.eps);
  if (eps <= 0 || eps >= 1) throw UsageError("--eps must lie in (0,1)");
  EmbeddingPtr e;
  Rational eps_scaled = eps;
  if (a.mode == "cube-uniform") {
    if (!f->domain().is_cube()) throw UsageError("cube-uniform needs a cube function");
    e = and_embedding(1);
  } else if (a.mode == "pbias") {
    if (!f->domain().is_cube()) throw UsageError("pbias needs a cube function");
    if (a.p.empty()) throw UsageError("pbias needs --p");
    eps_scaled = eps / 2;
    e = approx_bias(parse_rational(a.p), eps_scaled, static_cast<std::uint64_t>(f->domain().n())).embedding;
  } else if (a.mode == "grid") {
    if (a.cert.empty()) throw UsageError("grid mode needs --certificate; run construct-apm or search-embedding first");
    e = read_certificate_file(a.cert);
    eps_scaled = eps / 4;
  } else {
    throw UsageError("--mode must be cube-uniform, pbias or grid");
  }
  const LiftedOracle g(base, e);
  const std::uint64_t planned = planned_repetitions(g.dim(), eps_scaled, a.kappa);
  // --trials runs a fixed number of trials; otherwise the planned count, stopping at the first rejection.
  const bool fixed = a.trials > 0;
  const std::uint64_t count = fixed ? a.trials : planned;
  std::vector<TesterVerdict> verdicts;
  if (fixed) {
    verdicts.resize(count);
    std::atomic<std::uint64_t> next{0};
    auto worker = [&]() {
      for (std::uint64_t i; (i = next.fetch_add(1)) < count;) {
        Rng rng = trial_rng(a.c.seed, i);
        verdicts[i] = lifted_tester_trial(g, rng);
      }
    };
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < a.c.jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
  } else {
    for (std::uint64_t i = 0; i < count; ++i) {
      Rng rng = trial_rng(a.c.seed, i);
      verdicts.push_back(lifted_tester_trial(g, rng));
      if (verdicts.back().reject) break;
    }
  }
  Output out(a.c.out);
  write_csv_header(*out, "test", {{"fn", a.fn}, {"mode", a.mode}, {"p", a.p}, {"eps", a.eps}, {"seed", std::to_string(a.c.seed)},
                                   {"r", std::to_string(e->r())}, {"lifted dim", std::to_string(g.dim())}, {"kappa", std::to_string(a.kappa)},
                                   {"planned trials", std::to_string(planned)}});
  *out << "trial,verdict,x,y,queries_cum\n";
  std::uint64_t q = 0, rejects = 0;
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    const auto& v = verdicts[i];
    q += static_cast<std::uint64_t>(v.queries);
    rejects += v.reject;
    *out << i << ',' << (v.reject ? "reject" : "accept") << ',' << v.x.to_hex() << ',' << v.y.to_hex() << ',' << q << '\n';
  }
  if (q != base.queries()) throw std::logic_error("query accounting mismatch");
  std::cerr << (rejects ? "reject" : "accept") << ": " << rejects << " rejecting trials of " << verdicts.size() << ", " << q << " queries\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monotone embeddings and monotonicity testing"};
  app.set_version_flag("--version", std::string("monoembed ") + kVersion);
  app.require_subcommand(1);

  DistanceArgs da;
  auto* dist = app.add_subcommand("distance", "exact distance to the closest monotone function");
  add_common(dist, da.c);
  dist->add_option("--fn", da.fn, "function file")->required();
  dist->add_option("--measure", da.measure, "product measure file");
  dist->add_flag("--uniform", da.uniform, "uniform measure (default)");
  dist->add_option("--pbias,--p", da.pbias, "p-biased measure on a cube");
  dist->add_option("--witness", da.witness, "write the closest monotone function here");
  dist->add_flag("--brute", da.brute, "cross-check by exhaustive search (small domains)");

  SensitivityArgs sa;
  auto* sens = app.add_subcommand("sensitivity", "distribution of negative sensitivity");
  add_common(sens, sa.c);
  sens->add_option("--fn", sa.fn, "function file")->required();
  sens->add_option("--measure", sa.measure, "product measure file");
  sens->add_flag("--uniform", sa.uniform, "uniform measure (default)");
  sens->add_option("--pbias,--p", sa.pbias, "p-biased measure on a cube");
  sens->add_option("--sensitivity", sa.mode, "covering or any");

  IsoArgs ia;
  auto* iso = app.add_subcommand("isoperimetry", "isoperimetric ratio over one function or a random corpus");
  add_common(iso, ia.c);
  iso->add_option("--fn", ia.fn, "single function file");
  iso->add_option("--domain", ia.kind, "cube or grid");
  iso->add_option("--n", ia.n, "dimension");
  iso->add_option("--m", ia.m, "grid side");
  iso->add_option("--p", ia.p, "bias (cube only)");
  iso->add_option("--trials", ia.trials, "corpus size");
  iso->add_option("--sensitivity", ia.mode, "covering or any");

  EmbedArgs ea;
  auto* emb = app.add_subcommand("embed", "write an embedding certificate");
  add_common(emb, ea.c);
  emb->add_option("--kind", ea.kind, "and, threshold or bias");
  emb->add_option("--r", ea.r, "cube dimension per coordinate");
  emb->add_option("--m", ea.m, "alphabet size (threshold)");
  emb->add_option("--p", ea.p, "target bias (bias)");
  emb->add_option("--delta,--eps", ea.delta, "accuracy (bias)");
  emb->add_option("--n", ea.n, "number of coordinates the bias must serve");
  emb->add_flag("--complement", ea.complement, "complement the embedding");

  VerifyArgs va;
  auto* ver = app.add_subcommand("verify-embedding", "check the four embedding axioms");
  add_common(ver, va.c);
  ver->add_option("--cert,--certificate", va.cert, "certificate file")->required();
  ver->add_option("--samples", va.samples, "samples per axiom when exact enumeration is out of reach");

  ApmArgs aa;
  auto* apm = app.add_subcommand("construct-apm", "layered partitions and chunk matchings over many seeds");
  add_common(apm, aa.c);
  apm->add_option("--n", aa.n, "cube dimension")->check(CLI::Range(1, kMaxApmDim));
  apm->add_option("--m", aa.m, "number of chunks");
  apm->add_option("--seeds", aa.seeds, "number of seeds");
  apm->add_option("--cert,--certificate", aa.cert, "write the embedding from seed index 0");

  SearchArgs sea;
  auto* srch = app.add_subcommand("search-embedding", "search for an exact embedding of [m] into {0,1}^r");
  add_common(srch, sea.c);
  srch->add_option("--r", sea.r, "cube dimension");
  srch->add_option("--m", sea.m, "alphabet size");
  srch->add_option("--budget", sea.budget, "maximum attempts");
  srch->add_option("--cert,--certificate", sea.cert, "certificate output");

  DomArgs doa;
  auto* dom = app.add_subcommand("domination", "fractional domination between slices with an extra subset");
  add_common(dom, doa.c);
  dom->add_option("--n", doa.n);
  dom->add_option("--k", doa.k);
  dom->add_option("--t", doa.t);
  dom->add_option("--s", doa.s, "size of the random subset of slice k");
  dom->add_option("--d", doa.d);
  dom->add_option("--trials", doa.trials);
  dom->add_option("--side", doa.side, "lower or upper");

  KKArgs ka;
  auto* kk = app.add_subcommand("kk-audit", "iterated shadow inequality over slice families");
  add_common(kk, ka.c);
  kk->add_option("--n", ka.n, "dimension; n <= 5 is exhaustive");
  kk->add_option("--trials", ka.trials, "random families per slice when n > 5");

  TestArgs ta;
  auto* tst = app.add_subcommand("test", "run the lifted pair tester");
  add_common(tst, ta.c);
  tst->add_option("--fn", ta.fn, "function file")->required();
  tst->add_option("--mode", ta.mode, "cube-uniform, pbias or grid");
  tst->add_option("--p", ta.p, "bias (pbias)");
  tst->add_option("--eps", ta.eps, "distance parameter");
  tst->add_option("--trials", ta.trials, "fixed trial count; default runs the planned count and stops at a rejection");
  tst->add_option("--cert,--certificate", ta.cert, "embedding certificate (grid)");
  tst->add_option("--kappa", ta.kappa, "polylog exponent in the repetition count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (*dist) return run_distance(da);
    if (*sens) return run_sensitivity(sa);
    if (*iso) return run_isoperimetry(ia);
    if (*emb) return run_embed(ea);
    if (*ver) return run_verify(va);
    if (*apm) return run_construct_apm(aa);
    if (*srch) return run_search(sea);
    if (*dom) return run_domination(doa);
    if (*kk) return run_kk_audit(ka);
    if (*tst) return run_test(ta);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
