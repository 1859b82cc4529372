#pragma once
// Seeded RNG streams. Each worker gets its own engine derived from
// (seed, stream id) so runs are reproducible and streams don't collide.
#include <cstdint>
#include <random>

namespace rhm {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::mt19937_64 make_rng(uint64_t seed, uint64_t stream = 0) {
  std::seed_seq seq{splitmix64(seed), splitmix64(seed ^ 0x5851f42d4c957f2dULL),
                    splitmix64(stream), splitmix64(stream + 0x14057b7ef767814fULL)};
  return std::mt19937_64(seq);
}

// uniform integer in [0, n)
inline uint64_t uniform_below(std::mt19937_64& rng, uint64_t n) {
  std::uniform_int_distribution<uint64_t> d(0, n - 1);
  return d(rng);
}

}  // namespace rhm
