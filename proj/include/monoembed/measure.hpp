#pragma once

#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "function.hpp"
#include "random.hpp"
#include "rational.hpp"

namespace monoembed {

/// Product of per-coordinate distributions over [m].
class ProductMeasure {
 public:
  ProductMeasure() = default;
  ProductMeasure(Domain dom, std::vector<std::vector<Rational>> coords) : dom_(std::move(dom)), coords_(std::move(coords)) {
    if (coords_.size() != static_cast<std::size_t>(dom_.n())) throw std::invalid_argument("measure: one distribution per coordinate");
    for (auto& c : coords_) {
      if (c.size() != static_cast<std::size_t>(dom_.m())) throw std::invalid_argument("measure: distribution length must be m");
      Rational total = 0;
      for (auto& v : c) {
        v.canonicalize();
        if (v < 0) throw std::invalid_argument("measure: negative mass");
        total += v;
      }
      if (total != 1) throw std::invalid_argument("measure: coordinate distribution does not sum to 1");
    }
    build_tables();
  }

  static ProductMeasure uniform(const Domain& dom) {
    std::vector<Rational> c(static_cast<std::size_t>(dom.m()), Rational(1, dom.m()));
    return ProductMeasure(dom, std::vector<std::vector<Rational>>(static_cast<std::size_t>(dom.n()), c));
  }
  static ProductMeasure pbiased(int n, const Rational& p) {
    if (p < 0 || p > 1) throw std::invalid_argument("pbiased: p must lie in [0,1]");
    std::vector<Rational> c{1 - p, p};
    return ProductMeasure(Domain::cube(n), std::vector<std::vector<Rational>>(static_cast<std::size_t>(n), c));
  }
  static ProductMeasure point_mass(const Domain& dom, const Coords& x) {
    dom.check_coords(x);
    std::vector<std::vector<Rational>> cs(static_cast<std::size_t>(dom.n()), std::vector<Rational>(static_cast<std::size_t>(dom.m()), 0));
    for (int i = 0; i < dom.n(); ++i) cs[static_cast<std::size_t>(i)][x[static_cast<std::size_t>(i)]] = 1;
    return ProductMeasure(dom, std::move(cs));
  }
  /// Same distribution on every coordinate.
  static ProductMeasure iid(const Domain& dom, const std::vector<Rational>& dist) {
    return ProductMeasure(dom, std::vector<std::vector<Rational>>(static_cast<std::size_t>(dom.n()), dist));
  }

  const Domain& domain() const noexcept { return dom_; }
  const std::vector<Rational>& coordinate(int i) const { return coords_.at(static_cast<std::size_t>(i)); }

  Rational measure_of(std::uint64_t rank) const {
    Rational out = 1;
    for (int i = 0; i < dom_.n(); ++i) out *= coords_[static_cast<std::size_t>(i)][dom_.digit(rank, i)];
    return out;
  }
  Rational measure_of(const Coords& x) const { return measure_of(dom_.rank(x)); }

  /// Common denominator D = prod_i lcm(denominators of coordinate i).
  BigInt common_denominator() const {
    BigInt d = 1;
    for (const auto& den : denoms_) d *= den;
    return d;
  }
  /// D * measure_of(rank), an integer.
  BigInt scaled_mass(std::uint64_t rank) const {
    BigInt out = 1;
    for (int i = 0; i < dom_.n(); ++i) out *= scaled_[static_cast<std::size_t>(i)][dom_.digit(rank, i)];
    return out;
  }

  Coords sample(Rng& rng) const {
    Coords x(static_cast<std::size_t>(dom_.n()));
    for (int i = 0; i < dom_.n(); ++i) x[static_cast<std::size_t>(i)] = sample_coordinate(i, rng);
    return x;
  }

  std::uint32_t sample_coordinate(int i, Rng& rng) const {
    const auto& cum = cumulative_[static_cast<std::size_t>(i)];
    const std::uint64_t total = cum.back();
    const std::uint64_t u = uniform_below(rng, total);
    std::uint32_t v = 0;
    while (cum[v] <= u) ++v;
    return v;
  }

 private:
  void build_tables() {
    denoms_.clear();
    scaled_.clear();
    cumulative_.clear();
    for (const auto& c : coords_) {
      BigInt d = 1;
      for (const auto& v : c) d = lcm(d, v.get_den());
      denoms_.push_back(d);
      std::vector<BigInt> s;
      for (const auto& v : c) s.push_back(BigInt(v * d));
      scaled_.push_back(s);
      // Sampling table: exact when the denominator fits 63 bits, else 2^53 rounding.
      std::vector<std::uint64_t> cum;
      const bool exact = mpz_sizeinbase(d.get_mpz_t(), 2) <= 62;
      std::uint64_t acc = 0;
      for (std::size_t j = 0; j < c.size(); ++j) {
        std::uint64_t w = exact ? s[j].get_ui() : static_cast<std::uint64_t>(c[j].get_d() * 9007199254740992.0);
        acc += w;
        cum.push_back(acc);
      }
      if (acc == 0) cum.back() = 1;
      cumulative_.push_back(std::move(cum));
    }
  }

  Domain dom_;
  std::vector<std::vector<Rational>> coords_;
  std::vector<BigInt> denoms_;
  std::vector<std::vector<BigInt>> scaled_;
  std::vector<std::vector<std::uint64_t>> cumulative_;
};

inline Rational measure_of(const ProductMeasure& mu, const Coords& x) { return mu.measure_of(x); }

inline Coords sample_point(const ProductMeasure& mu, Rng& rng) { return mu.sample(rng); }

inline ProductMeasure read_measure(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("measure file: missing domain line");
  Domain dom = read_domain_line(line);
  std::vector<std::vector<Rational>> cs;
  while (static_cast<int>(cs.size()) < dom.n() && std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::vector<Rational> c;
    std::string tok;
    while (ls >> tok) c.push_back(parse_rational(tok));
    cs.push_back(std::move(c));
  }
  return ProductMeasure(dom, std::move(cs));
}

inline ProductMeasure read_measure_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_measure(in);
}

inline void write_measure(std::ostream& out, const ProductMeasure& mu) {
  out << mu.domain().describe() << '\n';
  for (int i = 0; i < mu.domain().n(); ++i) {
    const auto& c = mu.coordinate(i);
    for (std::size_t j = 0; j < c.size(); ++j) out << (j ? " " : "") << to_fraction_string(c[j]);
    out << '\n';
  }
}

}  // namespace monoembed
