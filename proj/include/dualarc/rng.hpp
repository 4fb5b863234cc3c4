// SPDX-License-Identifier: Apache-2.0
//
// Seeded random source. std::mt19937_64 output is fixed by the standard;
// the bounded draws below avoid the implementation-defined standard
// distributions so a seed reproduces the same stream on every platform.

#ifndef DUALARC_RNG_HPP_
#define DUALARC_RNG_HPP_

#include <cstdint>
#include <random>

namespace dualarc {

// SplitMix64 finalizer, used to derive independent substream seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix_seed(seed)) {}

  // Substream `index` of master seed `seed`.
  Rng(std::uint64_t seed, std::uint64_t index)
      : seed_(seed), engine_(mix_seed(mix_seed(seed) ^ mix_seed(index + 1))) {}

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, bound); bound > 0.
  std::uint64_t uniform(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace dualarc

#endif  // DUALARC_RNG_HPP_
