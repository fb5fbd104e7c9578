#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace atomlab {

using Rng = std::mt19937_64;

/// Recorded in sample metadata so runs can be reproduced.
inline constexpr const char* kRngAlgorithm = "mt19937_64";

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of the index-th independent stream derived from a master seed.
/// Streams do not depend on how work is split across threads.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index));
}

struct RandomSource {
  std::uint64_t seed = 0;
  std::string algorithm = kRngAlgorithm;

  Rng engine() const { return Rng(seed); }
  Rng stream(std::uint64_t index) const { return Rng(derive_seed(seed, index)); }
};

}  // namespace atomlab
