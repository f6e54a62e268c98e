#pragma once

#include <cstdint>
#include <random>

namespace scg {

using Rng = std::mt19937_64;

/// Counter-based split of a master seed: stream k of seed s is seeded with
/// splitmix64(s + (k + 1) * golden gamma), so streams are reproducible and
/// independent of how many other streams are drawn.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + (stream + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline Rng make_rng(std::uint64_t master, std::uint64_t stream) { return Rng(derive_seed(master, stream)); }

}  // namespace scg
