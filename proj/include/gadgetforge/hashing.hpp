#pragma once

#include "gadgetforge/algebra.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace gadgetforge {

// psi: {0,1}^{kn} x {0,1}^n -> {0,1}. The seed holds k coefficients of a
// polynomial over GF(2^n); psi(s, x) is the low bit of p_s(x).
struct HashFamily {
  unsigned n = 1;  // input bit-length
  unsigned k = 1;  // independence order

  HashFamily(unsigned n, unsigned k);
  unsigned seed_bits() const { return n * k; }
};

// Coefficients c_0 ... c_{k-1}, each an n-bit word.
struct HashSeed {
  std::vector<std::uint32_t> coeffs;

  friend bool operator==(const HashSeed&, const HashSeed&) = default;
};

// Seed number s in [0, 2^{kn}): coefficient i is bits [i*n, (i+1)*n).
HashSeed seed_from_index(const HashFamily& fam, std::uint64_t index);

// Hex, most-significant coefficient first; ceil(kn/4) digits.
std::string seed_to_hex(const HashFamily& fam, const HashSeed& seed);
HashSeed seed_from_hex(const HashFamily& fam, std::string_view hex);

int hash_eval(const HashFamily& fam, const HashSeed& seed, std::uint32_t x);

using HashEvaluator = std::function<int(const HashFamily&, const HashSeed&, std::uint32_t)>;

struct KwiseReport {
  bool ok = false;
  bool exhaustive = false;  // false: tuples were sampled
  std::uint64_t tuples_checked = 0;
  std::uint64_t seeds_per_tuple = 0;
};

// Checks that for distinct x_1..x_k every outcome vector has probability
// exactly 2^-k over uniform seeds. All seeds are enumerated; tuples are
// exhaustive within budget, sampled otherwise.
KwiseReport verify_kwise(const HashFamily& fam, const HashEvaluator& eval = hash_eval,
                         std::uint64_t sample_seed = 0);

}  // namespace gadgetforge
