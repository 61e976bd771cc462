#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bits.hpp"

namespace monoembed {

using Coords = std::vector<std::uint32_t>;

inline constexpr int kMaxStreamCubeDim = 30;
inline constexpr int kMaxDenseLog2 = 22;

/// {0,1}^n or [m]^n with the product order; ranks are little-endian mixed radix.
class Domain {
 public:
  Domain() = default;

  static Domain cube(int n) { return Domain(true, 2, n); }
  static Domain grid(int m, int n) { return Domain(false, m, n); }

  bool is_cube() const noexcept { return cube_; }
  int m() const noexcept { return m_; }
  int n() const noexcept { return n_; }

  /// Number of points; only meaningful for dense-sized domains.
  std::uint64_t size() const {
    if (!dense_ok()) throw std::length_error("domain too large for dense enumeration");
    return size_;
  }
  bool dense_ok() const noexcept { return size_ != 0 && size_ <= (std::uint64_t{1} << kMaxDenseLog2); }
  std::uint64_t stride(int i) const { return strides_.at(static_cast<std::size_t>(i)); }

  std::uint32_t digit(std::uint64_t rank, int i) const noexcept {
    if (cube_) return static_cast<std::uint32_t>(rank >> i & 1u);
    return static_cast<std::uint32_t>(rank / strides_[static_cast<std::size_t>(i)] % static_cast<std::uint64_t>(m_));
  }

  std::uint64_t rank(const Coords& x) const {
    check_coords(x);
    std::uint64_t r = 0;
    for (int i = n_ - 1; i >= 0; --i) r = r * static_cast<std::uint64_t>(m_) + x[static_cast<std::size_t>(i)];
    return r;
  }

  Coords unrank(std::uint64_t rank) const {
    Coords x(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) {
      x[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(rank % static_cast<std::uint64_t>(m_));
      rank /= static_cast<std::uint64_t>(m_);
    }
    return x;
  }

  void check_coords(const Coords& x) const {
    if (x.size() != static_cast<std::size_t>(n_)) throw std::invalid_argument("point length does not match domain");
    for (auto v : x)
      if (v >= static_cast<std::uint32_t>(m_)) throw std::invalid_argument("coordinate out of range");
  }

  /// Coordinate-wise order on ranks.
  bool leq(std::uint64_t x, std::uint64_t y) const noexcept {
    if (cube_) return (x & ~y) == 0;
    for (int i = 0; i < n_; ++i)
      if (digit(x, i) > digit(y, i)) return false;
    return true;
  }

  /// Calls fn(i, y) for each upper covering neighbour y = x + e_i.
  template <class Fn>
  void for_each_up_cover(std::uint64_t x, Fn&& fn) const {
    for (int i = 0; i < n_; ++i)
      if (digit(x, i) + 1 < static_cast<std::uint32_t>(m_)) fn(i, x + strides_[static_cast<std::size_t>(i)]);
  }
  template <class Fn>
  void for_each_down_cover(std::uint64_t x, Fn&& fn) const {
    for (int i = 0; i < n_; ++i)
      if (digit(x, i) > 0) fn(i, x - strides_[static_cast<std::size_t>(i)]);
  }

  /// Sum of coordinates; Hamming weight on the cube.
  std::uint64_t level(std::uint64_t x) const noexcept {
    if (cube_) return static_cast<std::uint64_t>(std::popcount(x));
    std::uint64_t s = 0;
    for (int i = 0; i < n_; ++i) s += digit(x, i);
    return s;
  }

  std::string describe() const {
    return cube_ ? "cube " + std::to_string(n_) : "grid " + std::to_string(m_) + " " + std::to_string(n_);
  }

  bool operator==(const Domain& o) const noexcept { return cube_ == o.cube_ && m_ == o.m_ && n_ == o.n_; }

 private:
  Domain(bool cube, int m, int n) : cube_(cube), m_(m), n_(n) {
    if (m < 2) throw std::invalid_argument("alphabet size must be at least 2");
    if (n < 1) throw std::invalid_argument("dimension must be at least 1");
    strides_.resize(static_cast<std::size_t>(n));
    std::uint64_t s = 1;
    bool overflow = false;
    for (int i = 0; i < n; ++i) {
      strides_[static_cast<std::size_t>(i)] = overflow ? 0 : s;
      if (s > (std::uint64_t{1} << 40) / static_cast<std::uint64_t>(m))
        overflow = true;
      else
        s *= static_cast<std::uint64_t>(m);
    }
    size_ = overflow ? 0 : s;
  }

  bool cube_ = true;
  int m_ = 2;
  int n_ = 1;
  std::uint64_t size_ = 2;
  std::vector<std::uint64_t> strides_{1};
};

/// Point of {0,1}^n, coordinate i = bit i.
struct CubePoint {
  std::uint32_t bits = 0;
  int n = 0;
};

struct GridPoint {
  Coords coords;
  int m = 2;
};

inline bool leq(const CubePoint& x, const CubePoint& y) {
  if (x.n != y.n) throw std::invalid_argument("leq: points from different cubes");
  return (x.bits & ~y.bits) == 0;
}

inline bool leq(const GridPoint& x, const GridPoint& y) {
  if (x.m != y.m || x.coords.size() != y.coords.size()) throw std::invalid_argument("leq: points from different grids");
  for (std::size_t i = 0; i < x.coords.size(); ++i)
    if (x.coords[i] > y.coords[i]) return false;
  return true;
}

inline bool leq(const BitVector& x, const BitVector& y) {
  if (x.size() != y.size()) throw std::invalid_argument("leq: points from different cubes");
  return x.subset_of(y);
}

}  // namespace monoembed
