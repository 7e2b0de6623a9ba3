#pragma once

#include <cstdint>

namespace pzeta {

// SplitMix64 output function (Steele, Lea & Flood 2014).  Full-period
// bijective mixer; consecutive counter values give statistically
// independent outputs.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Stream splitting: the k-th draw of a seeded stream is a pure function
// of (seed, k), so any sample index can be generated on any thread in any
// order with identical results.
inline std::uint64_t stream_draw(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) + index);
}

// Uniform double in [0, 1) using the top 53 bits.
inline double uniform01(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

inline double stream_uniform01(std::uint64_t seed, std::uint64_t index) {
  return uniform01(stream_draw(seed, index));
}

}  // namespace pzeta
