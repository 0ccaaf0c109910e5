#ifndef PATHINT_RNG_HPP
#define PATHINT_RNG_HPP

#include <cstdint>

namespace pathint {

// SplitMix64, used only to expand seeds into stream states.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// xoshiro256** with per-stream seeding. All Monte Carlo code draws from this
// generator so results are reproducible across platforms and builds; the
// standard <random> distributions are implementation-defined and are not used.
class Rng {
 public:
  Rng() : Rng(0, 0) {}
  Rng(std::uint64_t master_seed, std::uint64_t stream) {
    std::uint64_t sm = master_seed ^ (0x6a09e667f3bcc909ull * (stream + 1));
    for (auto& word : state_) word = splitmix64(sm);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform in [0,1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [-w, w).
  double symmetric(double w) { return w * (2.0 * uniform() - 1.0); }

  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::uint64_t state_[4];
};

}  // namespace pathint

#endif
