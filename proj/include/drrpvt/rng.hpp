#pragma once

// Deterministic random source. std::mt19937_64 has a pinned bitstream, but
// the standard <random> distributions are implementation-defined, so the
// distributions here are hand-rolled to keep seeded runs byte-reproducible
// across toolchains.

#include <cmath>
#include <cstdint>
#include <random>

namespace drrpvt {

// splitmix64 step; used to derive independent substream seeds.
inline uint64_t mix_seed(uint64_t a, uint64_t b) {
  uint64_t x = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer in [lo, hi] inclusive. Modulo bias is negligible for the
  // small spans used in this project.
  int64_t uniform_int(int64_t lo, int64_t hi) {
    uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    return lo + static_cast<int64_t>(engine_() % span);
  }

  // Knuth's product method; large means are split so the rejection loop
  // stays short and exp(-mean) stays away from underflow.
  int poisson(double mean) {
    if (mean <= 0.0) return 0;
    if (mean > 30.0) return poisson(mean / 2) + poisson(mean - mean / 2);
    double limit = std::exp(-mean);
    double prod = uniform01();
    int k = 0;
    while (prod > limit) {
      prod *= uniform01();
      ++k;
    }
    return k;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace drrpvt
