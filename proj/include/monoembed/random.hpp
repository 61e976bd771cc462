#pragma once

#include <cstdint>
#include <random>

namespace monoembed {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Stream for trial `index` under base seed: keyed by base XOR index, then scrambled.
inline Rng trial_rng(std::uint64_t base, std::uint64_t index) { return Rng(splitmix64(base ^ index)); }

inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(rng);
}

inline bool coin(Rng& rng) { return (rng() >> 63) != 0; }

}  // namespace monoembed
