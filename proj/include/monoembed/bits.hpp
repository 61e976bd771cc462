#pragma once

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <stdexcept>
#include <string>
#include <vector>

namespace monoembed {

inline int popcount(std::uint64_t x) noexcept { return std::popcount(x); }

inline std::uint64_t low_mask(int bits) noexcept {
  return bits >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << bits) - 1);
}

inline std::uint64_t binomial(int n, int k) noexcept {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t out = 1;
  for (int i = 1; i <= k; ++i) out = out * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return out;
}

/// Next integer with the same popcount (Gosper's hack). Undefined for x == 0.
inline std::uint64_t next_same_weight(std::uint64_t x) noexcept {
  const std::uint64_t c = x & (~x + 1);
  const std::uint64_t r = x + c;
  return (((r ^ x) >> 2) / c) | r;
}

/// Points of weight k in {0,1}^n in increasing bitmask order.
class SliceRange {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = std::uint32_t;
    using difference_type = std::ptrdiff_t;
    using pointer = const std::uint32_t*;
    using reference = std::uint32_t;

    iterator() = default;
    iterator(std::uint64_t cur, std::uint64_t end, bool zero_weight)
        : cur_(cur), end_(end), zero_weight_(zero_weight) {}

    std::uint32_t operator*() const noexcept { return static_cast<std::uint32_t>(cur_); }
    iterator& operator++() noexcept {
      if (zero_weight_) {
        cur_ = end_;
      } else {
        cur_ = next_same_weight(cur_);
        if (cur_ > end_) cur_ = end_;
      }
      return *this;
    }
    iterator operator++(int) noexcept {
      auto copy = *this;
      ++*this;
      return copy;
    }
    bool operator==(const iterator& other) const noexcept { return cur_ == other.cur_; }

   private:
    std::uint64_t cur_ = 0;
    std::uint64_t end_ = 0;
    bool zero_weight_ = false;
  };

  SliceRange(int n, int k) : n_(n), k_(k) {
    if (n < 0 || n > 30) throw std::invalid_argument("enumerate_slice: n must lie in [0,30]");
    if (k < 0 || k > n) throw std::invalid_argument("enumerate_slice: weight out of range");
  }

  iterator begin() const noexcept {
    const std::uint64_t sentinel = std::uint64_t{1} << n_;
    return iterator(low_mask(k_), sentinel, k_ == 0);
  }
  iterator end() const noexcept {
    const std::uint64_t sentinel = std::uint64_t{1} << n_;
    return iterator(sentinel, sentinel, k_ == 0);
  }
  std::uint64_t size() const noexcept { return binomial(n_, k_); }

 private:
  int n_;
  int k_;
};

inline SliceRange enumerate_slice(int n, int k) { return SliceRange(n, k); }

inline std::vector<std::uint32_t> slice_points(int n, int k) {
  std::vector<std::uint32_t> out;
  out.reserve(binomial(n, k));
  for (auto x : enumerate_slice(n, k)) out.push_back(x);
  return out;
}

/// Calls fn(y) for every y ⊇ x with popcount(y) in [lo, hi], bits restricted to n.
template <class Fn>
void for_each_superset_in_weights(std::uint32_t x, int n, int lo, int hi, Fn&& fn) {
  const int base = popcount(x);
  std::vector<int> free_bits;
  for (int i = 0; i < n; ++i)
    if (!(x >> i & 1u)) free_bits.push_back(i);
  const int nf = static_cast<int>(free_bits.size());
  const int jmin = std::max(0, lo - base);
  const int jmax = std::min(nf, hi - base);
  for (int j = jmin; j <= jmax; ++j) {
    if (j == 0) {
      fn(x);
      continue;
    }
    // Gosper over the free positions.
    std::uint64_t sel = low_mask(j);
    const std::uint64_t stop = std::uint64_t{1} << nf;
    while (sel < stop) {
      std::uint32_t y = x;
      std::uint64_t s = sel;
      while (s) {
        y |= 1u << free_bits[std::countr_zero(s)];
        s &= s - 1;
      }
      fn(y);
      sel = next_same_weight(sel);
    }
  }
}

/// Dynamic bit string used for cube points beyond 64 coordinates.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  static BitVector from_mask(std::uint64_t mask, std::size_t size) {
    BitVector v(size);
    if (!v.words_.empty()) v.words_[0] = mask & low_mask(static_cast<int>(std::min<std::size_t>(size, 64)));
    return v;
  }

  std::size_t size() const noexcept { return size_; }
  bool get(std::size_t i) const noexcept { return words_[i >> 6] >> (i & 63) & 1u; }
  void set(std::size_t i, bool value) noexcept {
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (value)
      words_[i >> 6] |= bit;
    else
      words_[i >> 6] &= ~bit;
  }
  void flip(std::size_t i) noexcept { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  /// Bits [offset, offset+len) as an integer; len ≤ 64.
  std::uint64_t extract(std::size_t offset, int len) const noexcept {
    if (len == 0) return 0;
    const std::size_t w = offset >> 6;
    const int shift = static_cast<int>(offset & 63);
    std::uint64_t lo = words_[w] >> shift;
    if (shift != 0 && shift + len > 64 && w + 1 < words_.size()) lo |= words_[w + 1] << (64 - shift);
    return lo & low_mask(len);
  }

  std::size_t count_range(std::size_t offset, std::size_t len) const noexcept {
    std::size_t total = 0;
    std::size_t i = offset;
    const std::size_t end = offset + len;
    while (i < end) {
      const int chunk = static_cast<int>(std::min<std::size_t>(64, end - i));
      total += static_cast<std::size_t>(popcount(extract(i, chunk)));
      i += static_cast<std::size_t>(chunk);
    }
    return total;
  }
  std::size_t count() const noexcept { return count_range(0, size_); }

  /// True iff every set bit of *this is set in other.
  bool subset_of(const BitVector& other) const noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w] & ~other.words_[w]) return false;
    return true;
  }

  std::vector<std::uint64_t>& words() noexcept { return words_; }
  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

  /// Hex with the highest coordinate first; deterministic text form for CSV.
  std::string to_hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    const std::size_t nibbles = (size_ + 3) / 4;
    out.reserve(nibbles);
    for (std::size_t i = nibbles; i-- > 0;) {
      const int len = static_cast<int>(std::min<std::size_t>(4, size_ - 4 * i));
      out.push_back(kDigits[extract(4 * i, len)]);
    }
    return out.empty() ? "0" : out;
  }

  bool operator==(const BitVector&) const = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace monoembed
