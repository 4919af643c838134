#pragma once

#include <cstdint>

namespace spinrel {

// Counter-based uniform stream (splitmix64 finalizer applied to
// seed + index * golden gamma). Value i depends only on (seed, i), so
// parallel and serial traversals agree bit-exactly on any platform.

/// 64 mixed bits for counter position `index` of stream `seed`.
inline std::uint64_t mixed_bits_at(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Uniform double in [0, 1) from the top 53 bits of the counter stream.
inline double uniform_at(std::uint64_t seed, std::uint64_t index) {
  return static_cast<double>(mixed_bits_at(seed, index) >> 11) * 0x1.0p-53;
}

/// Deterministic child seed for sub-stream `stream` of `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return mixed_bits_at(seed ^ 0xA5A5A5A55A5A5A5AULL, stream);
}

}  // namespace spinrel
