#pragma once

#include <cstdint>

namespace mixedorder {

// splitmix64, used for seeding and stream derivation.
inline uint64_t splitmix64_next(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// xoshiro256++. Deterministic across platforms; satisfies
// UniformRandomBitGenerator so it plugs into <random> distributions.
class Xoshiro256pp {
 public:
  using result_type = uint64_t;

  explicit Xoshiro256pp(uint64_t seed = 0) {
    uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64_next(sm);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~uint64_t{0}; }

  result_type operator()() {
    const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // uniform double in [0, 1)
  double uniform() { return ((*this)() >> 11) * 0x1.0p-53; }

  // integer in [0, n)
  uint64_t below(uint64_t n) { return (*this)() % n; }

  // Independent child stream; deterministic in (parent seed material, k).
  Xoshiro256pp fork(uint64_t k) const {
    uint64_t sm = s_[0] ^ (s_[3] + 0x9e3779b97f4a7c15ull * (k + 1));
    Xoshiro256pp child;
    for (auto& w : child.s_) w = splitmix64_next(sm);
    return child;
  }

 private:
  static uint64_t rotl(uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  uint64_t s_[4];
};

}  // namespace mixedorder
