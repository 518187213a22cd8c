#pragma once

#include <cstdint>
#include <random>

namespace qkdsim {

using Rng = std::mt19937_64;

// SplitMix64 finalizer; used to derive independent per-round seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Stream derivation: (master seed, stream tag, index) -> generator.
// Every round owns its stream, so results do not depend on scheduling.
inline Rng make_stream(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::uint64_t s = splitmix64(seed);
  s = splitmix64(s ^ splitmix64(stream));
  s = splitmix64(s ^ splitmix64(index));
  return Rng(s);
}

// Stream tags for the different consumers of randomness.
enum : std::uint64_t {
  kStreamRound = 0x726f756e64ULL,      // per-round protocol randomness
  kStreamWExtra = 0x77657874ULL,       // per-round W-only draws (delta, Delta, omega, test)
  kStreamW7 = 0x773701ULL,             // W7 key-sampling
  kStreamAux = 0x617578ULL,            // test / tooling scratch streams
};

inline double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

inline int random_bit(Rng& rng) { return static_cast<int>(rng() & 1ULL); }

}  // namespace qkdsim
