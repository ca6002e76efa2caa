#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace gadgetforge {

// Counter-based generator: output i is splitmix64(key + i * golden).
// A stream is fully determined by (master seed, stream index), so per-trial
// streams are independent of scheduling.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t key) : key_(key) {}

  // Stream `index` of the family rooted at `master`.
  static Rng derive(std::uint64_t master, std::uint64_t index) {
    return Rng(mix(mix(master) ^ (index * 0xD1B54A32D192ED03ull + 0x8CB92BA72F3D8DD7ull)));
  }

  Rng split(std::uint64_t index) const { return derive(key_, index); }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return mix(key_ + (++counter_) * 0x9E3779B97F4A7C15ull); }

  // Uniform in [0, bound); bound > 0. Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t limit = max() - max() % bound;
    std::uint64_t x;
    do {
      x = (*this)();
    } while (x >= limit);
    return x % bound;
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  // Uniform k-subset of {0, ..., n-1}, returned sorted.
  std::vector<std::uint32_t> subset(std::uint32_t n, std::uint32_t k);

  // Uniformly shuffled {0, ..., n-1}.
  std::vector<std::uint32_t> permutation(std::uint32_t n);

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace gadgetforge
