#pragma once

#include <cmath>
#include <cstdint>

namespace graphsal {

// Deterministic splitmix64-based generator with derivable sub-streams.
// All randomness in the project flows through this type so that every
// seeded operation is reproducible bit-for-bit, independent of platform
// RNG library details and of how work is scheduled across threads.
class Rng {
public:
  explicit Rng(uint64_t seed) : base_(seed), state_(seed) {}

  // Independent stream derived from the *original* seed, not from the
  // current state. fork(i) is stable no matter how much the parent has
  // been consumed.
  Rng fork(uint64_t stream) const {
    return Rng(hash64(base_ ^ (0x9e3779b97f4a7c15ULL + stream * 0xd1b54a32d192ed03ULL)));
  }

  uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return hash64(state_);
  }

  // uniform in [0,1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // uniform integer in [0,n), n >= 1
  int64_t uniform_int(int64_t n) {
    return static_cast<int64_t>((static_cast<unsigned __int128>(next_u64()) *
                                 static_cast<unsigned __int128>(n)) >> 64);
  }

  // standard normal, Box-Muller with pair caching
  double normal() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; // (0,1]
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(a);
    has_cached_ = true;
    return r * std::cos(a);
  }

private:
  static uint64_t hash64(uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
  }

  uint64_t base_;
  uint64_t state_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

} // namespace graphsal
