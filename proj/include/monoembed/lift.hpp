#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include "distance.hpp"
#include "embedding.hpp"
#include "function.hpp"

namespace monoembed {

/// g(x(1), ..., x(n)) = f(phi(x(1)), ..., phi(x(n))) over {0,1}^{rn}; one base query per call.
class LiftedOracle {
 public:
  LiftedOracle(const CountingOracle& base, EmbeddingPtr e) : base_(&base), e_(std::move(e)) {
    if (base.domain().m() != e_->m()) throw std::invalid_argument("lift: embedding alphabet does not match the function");
  }

  std::size_t dim() const noexcept { return static_cast<std::size_t>(e_->r()) * static_cast<std::size_t>(base_->domain().n()); }
  int blocks() const noexcept { return base_->domain().n(); }
  const LocalEmbedding& embedding() const noexcept { return *e_; }
  const CountingOracle& base() const noexcept { return *base_; }

  /// The point phi^{(n)}(x) of the base domain.
  Coords project(const BitVector& x) const {
    if (x.size() != dim()) throw std::invalid_argument("lift: point has wrong length");
    Coords y(static_cast<std::size_t>(blocks()));
    for (int j = 0; j < blocks(); ++j) y[static_cast<std::size_t>(j)] = static_cast<std::uint32_t>(e_->phi(x, static_cast<std::size_t>(j) * static_cast<std::size_t>(e_->r())));
    return y;
  }

  bool operator()(const BitVector& x) const { return (*base_)(project(x)); }

 private:
  const CountingOracle* base_;
  EmbeddingPtr e_;
};

inline std::uint64_t project_rank(const Domain& d, const std::vector<std::uint8_t>& phi, int r, std::uint64_t x) {
  const std::uint64_t mask = low_mask(r);
  std::uint64_t rank = 0;
  for (int j = d.n() - 1; j >= 0; --j) rank = rank * static_cast<std::uint64_t>(d.m()) + phi[(x >> (j * r)) & mask];
  return rank;
}

/// Dense truth table of the lifted function (rn <= 22); does not touch any counter.
inline DenseBooleanFunction lift_dense(const DenseBooleanFunction& f, const LocalEmbedding& e) {
  const Domain& d = f.domain();
  if (d.m() != e.m()) throw std::invalid_argument("lift: embedding alphabet does not match the function");
  const int r = e.r(), n = d.n();
  if (r * n > kMaxDenseLog2) throw std::length_error("lift: rn too large for a dense table");
  const auto phi = e.phi_table();
  return DenseBooleanFunction::from_rule(Domain::cube(r * n), [&](std::uint64_t x) { return f(project_rank(d, phi, r, x)); });
}

/// Checks s_g^-(x) <= r * s_f^-(phi(x)) for every x of the lifted cube.
inline bool sensitivity_transfer_holds(const DenseBooleanFunction& f, const LocalEmbedding& e,
                                       SensitivityMode mode = SensitivityMode::AnyOnLine) {
  const auto g = lift_dense(f, e);
  const auto phi = e.phi_table();
  for (std::uint64_t x = 0; x < g.size(); ++x) {
    const int sg = neg_sensitivity(g, x);
    if (sg == 0) continue;
    const int sf = neg_sensitivity(f, project_rank(f.domain(), phi, e.r(), x), mode);
    if (sg > e.r() * sf) return false;
  }
  return true;
}

}  // namespace monoembed
