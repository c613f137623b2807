#pragma once

#include <cstdint>
#include <random>

namespace pacnav {

using Rng = std::mt19937_64;

/// Sub-stream tags. Each consumer of randomness draws from its own stream so
/// that changing one component's draws never perturbs another's.
enum class Stream : std::uint64_t {
  kForest = 1,
  kSpawn = 2,
  kObservation = 3,
  kRun = 4,
};

std::uint64_t splitmix64(std::uint64_t x);

/// Deterministic seed for (master, stream, a, b).
std::uint64_t derive_seed(std::uint64_t master, Stream stream, std::uint64_t a = 0,
                          std::uint64_t b = 0);

inline Rng make_rng(std::uint64_t master, Stream stream, std::uint64_t a = 0,
                    std::uint64_t b = 0) {
  return Rng(derive_seed(master, stream, a, b));
}

}  // namespace pacnav
