#include "gadgetforge/hashing.hpp"

#include "gadgetforge/errors.hpp"
#include "gadgetforge/rng.hpp"

#include <algorithm>

namespace gadgetforge {

namespace {

constexpr std::uint64_t kSeedBudgetLog2 = 24;
constexpr std::uint64_t kWorkBudget = std::uint64_t{1} << 30;

int hex_value(char ch) {
  if (ch >= '0' && ch <= '9') return ch - '0';
  if (ch >= 'a' && ch <= 'f') return ch - 'a' + 10;
  if (ch >= 'A' && ch <= 'F') return ch - 'A' + 10;
  return -1;
}

// Advances a sorted k-combination of {0..n-1}; false when exhausted.
bool next_combination(std::vector<std::uint32_t>& c, std::uint32_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

HashFamily::HashFamily(unsigned n_, unsigned k_) : n(n_), k(k_) {
  if (n < 1 || n > 16) throw ValidationError("hash family: need 1 <= n <= 16");
  if (k < 1 || k > 16) throw ValidationError("hash family: need 1 <= k <= 16");
}

HashSeed seed_from_index(const HashFamily& fam, std::uint64_t index) {
  if (fam.seed_bits() < 64 && (index >> fam.seed_bits()) != 0) {
    throw DimensionError("seed index exceeds 2^{kn}");
  }
  HashSeed s;
  const std::uint64_t mask = (std::uint64_t{1} << fam.n) - 1;
  for (unsigned i = 0; i < fam.k; ++i) {
    s.coeffs.push_back(fam.n * i < 64 ? static_cast<std::uint32_t>((index >> (fam.n * i)) & mask) : 0);
  }
  return s;
}

std::string seed_to_hex(const HashFamily& fam, const HashSeed& seed) {
  if (seed.coeffs.size() != fam.k) throw DimensionError("seed has wrong coefficient count");
  // Bit j of the seed is bit (j mod n) of coefficient floor(j / n).
  const unsigned bits = fam.seed_bits();
  const unsigned digits = (bits + 3) / 4;
  std::string out(digits, '0');
  for (unsigned d = 0; d < digits; ++d) {
    unsigned nibble = 0;
    for (unsigned b = 0; b < 4; ++b) {
      unsigned j = 4 * d + b;
      if (j < bits && (seed.coeffs[j / fam.n] >> (j % fam.n) & 1u)) nibble |= 1u << b;
    }
    out[digits - 1 - d] = "0123456789abcdef"[nibble];
  }
  return out;
}

HashSeed seed_from_hex(const HashFamily& fam, std::string_view hex) {
  const unsigned bits = fam.seed_bits();
  const unsigned digits = (bits + 3) / 4;
  if (hex.size() != digits) {
    throw DimensionError("seed hex must have " + std::to_string(digits) + " digits");
  }
  HashSeed s;
  s.coeffs.assign(fam.k, 0);
  for (unsigned d = 0; d < digits; ++d) {
    int nibble = hex_value(hex[digits - 1 - d]);
    if (nibble < 0) throw ValidationError("seed hex: bad digit");
    for (unsigned b = 0; b < 4; ++b) {
      unsigned j = 4 * d + b;
      if (!(nibble >> b & 1)) continue;
      if (j >= bits) throw DimensionError("seed hex has bits beyond k*n");
      s.coeffs[j / fam.n] |= 1u << (j % fam.n);
    }
  }
  return s;
}

int hash_eval(const HashFamily& fam, const HashSeed& seed, std::uint32_t x) {
  if (seed.coeffs.size() != fam.k) throw DimensionError("seed has wrong coefficient count");
  if (x >> fam.n) throw DimensionError("hash input exceeds n bits");
  const Gf2nElem point(x, fam.n);
  Gf2nElem acc(seed.coeffs.back(), fam.n);
  for (std::size_t i = fam.k - 1; i-- > 0;) acc = acc * point + Gf2nElem(seed.coeffs[i], fam.n);
  return static_cast<int>(acc.bits() & 1u);
}

KwiseReport verify_kwise(const HashFamily& fam, const HashEvaluator& eval,
                         std::uint64_t sample_seed) {
  const std::uint64_t domain = std::uint64_t{1} << fam.n;
  if (fam.seed_bits() > kSeedBudgetLog2) {
    throw BudgetExceeded("verify_kwise: 2^{kn} exceeds the 2^24 enumeration budget");
  }
  KwiseReport report;
  if (fam.k > domain) {
    // No k distinct inputs exist; the claim is vacuous.
    report.ok = true;
    report.exhaustive = true;
    return report;
  }
  const std::uint64_t seeds = std::uint64_t{1} << fam.seed_bits();
  report.seeds_per_tuple = seeds;

  // Precompute psi(s, x) for all seeds and inputs.
  std::vector<std::uint8_t> table(seeds * domain);
  for (std::uint64_t s = 0; s < seeds; ++s) {
    HashSeed seed = seed_from_index(fam, s);
    for (std::uint64_t x = 0; x < domain; ++x) {
      table[s * domain + x] = static_cast<std::uint8_t>(eval(fam, seed, static_cast<std::uint32_t>(x)) & 1);
    }
  }

  const BigInt tuple_count = binomial(domain, fam.k);
  report.exhaustive = tuple_count * seeds <= BigInt(kWorkBudget);
  const std::uint64_t expected = seeds >> fam.k;
  std::vector<std::uint64_t> counts(std::size_t{1} << fam.k);

  auto check_tuple = [&](const std::vector<std::uint32_t>& xs) {
    std::fill(counts.begin(), counts.end(), 0);
    for (std::uint64_t s = 0; s < seeds; ++s) {
      std::size_t outcome = 0;
      for (unsigned i = 0; i < fam.k; ++i) outcome |= std::size_t{table[s * domain + xs[i]]} << i;
      ++counts[outcome];
    }
    ++report.tuples_checked;
    return std::all_of(counts.begin(), counts.end(), [&](std::uint64_t c) { return c == expected; });
  };

  report.ok = true;
  if (report.exhaustive) {
    // Unordered tuples suffice: permuting x_i permutes outcome coordinates.
    std::vector<std::uint32_t> xs(fam.k);
    for (unsigned i = 0; i < fam.k; ++i) xs[i] = i;
    do {
      if (!check_tuple(xs)) {
        report.ok = false;
        break;
      }
    } while (next_combination(xs, static_cast<std::uint32_t>(domain)));
  } else {
    Rng rng(sample_seed);
    const std::uint64_t samples = std::max<std::uint64_t>(1, kWorkBudget / seeds);
    for (std::uint64_t i = 0; i < samples && report.ok; ++i) {
      report.ok = check_tuple(rng.subset(static_cast<std::uint32_t>(domain), fam.k));
    }
  }
  return report;
}

}  // namespace gadgetforge
