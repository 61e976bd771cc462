#pragma once

#include <atomic>
#include <cstdint>
#include <fstream>
#include <functional>
#include <istream>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "domain.hpp"
#include "random.hpp"

namespace monoembed {

/// Explicit truth table over a dense domain, indexed by rank.
class DenseBooleanFunction {
 public:
  DenseBooleanFunction() = default;
  DenseBooleanFunction(Domain dom, std::vector<std::uint8_t> table) : dom_(std::move(dom)), table_(std::move(table)) {
    if (table_.size() != dom_.size()) throw std::invalid_argument("truth table length does not match domain size");
    for (auto& v : table_) v = v ? 1 : 0;
  }

  template <class Fn>
  static DenseBooleanFunction from_rule(const Domain& dom, Fn&& rule) {
    std::vector<std::uint8_t> t(dom.size());
    for (std::uint64_t x = 0; x < t.size(); ++x) t[x] = rule(x) ? 1 : 0;
    return DenseBooleanFunction(dom, std::move(t));
  }

  static DenseBooleanFunction constant(const Domain& dom, bool value) {
    return DenseBooleanFunction(dom, std::vector<std::uint8_t>(dom.size(), value ? 1 : 0));
  }

  const Domain& domain() const noexcept { return dom_; }
  std::uint64_t size() const noexcept { return table_.size(); }
  bool operator()(std::uint64_t rank) const { return table_.at(rank) != 0; }
  bool at(const Coords& x) const { return table_[dom_.rank(x)] != 0; }
  const std::vector<std::uint8_t>& table() const noexcept { return table_; }
  void set(std::uint64_t rank, bool v) { table_.at(rank) = v ? 1 : 0; }

  /// Monotone iff every covering pair is ordered.
  bool is_monotone() const {
    for (std::uint64_t x = 0; x < table_.size(); ++x) {
      if (!table_[x]) continue;
      bool ok = true;
      dom_.for_each_up_cover(x, [&](int, std::uint64_t y) { ok = ok && table_[y]; });
      if (!ok) return false;
    }
    return true;
  }

  bool operator==(const DenseBooleanFunction& o) const { return dom_ == o.dom_ && table_ == o.table_; }

 private:
  Domain dom_;
  std::vector<std::uint8_t> table_;
};

/// Black-box function over a domain that counts evaluations.
class CountingOracle {
 public:
  using Fn = std::function<bool(const Coords&)>;

  CountingOracle(Domain dom, Fn fn) : dom_(std::move(dom)), fn_(std::move(fn)) {}
  explicit CountingOracle(std::shared_ptr<const DenseBooleanFunction> f)
      : dom_(f->domain()), fn_([f](const Coords& x) { return f->at(x); }) {}

  bool operator()(const Coords& x) const {
    count_.fetch_add(1, std::memory_order_relaxed);
    return fn_(x);
  }

  const Domain& domain() const noexcept { return dom_; }
  std::uint64_t queries() const noexcept { return count_.load(std::memory_order_relaxed); }
  void reset() noexcept { count_.store(0, std::memory_order_relaxed); }

 private:
  Domain dom_;
  Fn fn_;
  mutable std::atomic<std::uint64_t> count_{0};
};

/// Each point is 1 independently with probability density.
inline DenseBooleanFunction random_function(const Domain& dom, Rng& rng, double density = 0.5) {
  std::bernoulli_distribution bit(density);
  return DenseBooleanFunction::from_rule(dom, [&](std::uint64_t) { return bit(rng); });
}

/// f with k distinct uniformly chosen points flipped.
inline DenseBooleanFunction corrupt(const DenseBooleanFunction& f, std::uint64_t k, Rng& rng) {
  if (k > f.size()) throw std::invalid_argument("corrupt: more flips than points");
  std::vector<std::uint64_t> idx(f.size());
  for (std::uint64_t i = 0; i < idx.size(); ++i) idx[i] = i;
  DenseBooleanFunction g = f;
  for (std::uint64_t i = 0; i < k; ++i) {
    std::swap(idx[i], idx[i + uniform_below(rng, idx.size() - i)]);
    g.set(idx[i], !g(idx[i]));
  }
  return g;
}

inline Domain read_domain_line(const std::string& line) {
  std::istringstream in(line);
  std::string kind;
  in >> kind;
  if (kind == "cube") {
    int n = 0;
    if (!(in >> n)) throw std::invalid_argument("bad domain line: " + line);
    return Domain::cube(n);
  }
  if (kind == "grid") {
    int m = 0, n = 0;
    if (!(in >> m >> n)) throw std::invalid_argument("bad domain line: " + line);
    return Domain::grid(m, n);
  }
  throw std::invalid_argument("bad domain line: " + line);
}

inline DenseBooleanFunction read_function(std::istream& in) {
  std::string header, body;
  if (!std::getline(in, header)) throw std::invalid_argument("function file: missing domain line");
  Domain dom = read_domain_line(header);
  if (!std::getline(in, body)) throw std::invalid_argument("function file: missing truth table");
  while (!body.empty() && (body.back() == '\r' || body.back() == ' ')) body.pop_back();
  std::vector<std::uint8_t> t;
  t.reserve(body.size());
  for (char c : body) {
    if (c != '0' && c != '1') throw std::invalid_argument("function file: table must be 0/1 characters");
    t.push_back(c == '1');
  }
  return DenseBooleanFunction(dom, std::move(t));
}

inline DenseBooleanFunction read_function_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_function(in);
}

inline void write_function(std::ostream& out, const DenseBooleanFunction& f) {
  out << f.domain().describe() << '\n';
  for (auto v : f.table()) out << (v ? '1' : '0');
  out << '\n';
}

}  // namespace monoembed
