#include "gadgetforge/bounds.hpp"

#include "gadgetforge/errors.hpp"

#include <cmath>

namespace gadgetforge {

std::int64_t theorem2_h(double gamma) {
  if (!(gamma > 0 && gamma < 1)) throw ValidationError("theorem2_h: need 0 < gamma < 1");
  // The nudge keeps exact powers of two from flooring one below.
  return static_cast<std::int64_t>(std::floor(2 * std::log2(1 / gamma) + 1e-12)) - 100;
}

std::optional<Rational> simulation_bound(std::int64_t h, const BigInt& n, const Rational& eps) {
  if (h <= 0 || n <= 0 || eps <= 0) throw ValidationError("simulation_bound: inputs must be positive");
  if (h * eps < 6) return std::nullopt;
  const Rational exponent = h * (1 - eps);
  if (exponent < 0) return std::nullopt;
  const BigInt num = numerator(exponent);
  const BigInt den = denominator(exponent);
  if (den > 4096 || num > BigInt(1) << 20) throw BudgetExceeded("simulation_bound: exponent too large to compare exactly");
  // n <= 2^{num/den}  iff  n^den <= 2^num.
  if (boost::multiprecision::pow(n, static_cast<unsigned>(den)) > pow2(static_cast<unsigned>(num))) {
    return std::nullopt;
  }
  return eps * h / 4;
}

std::optional<Rational> corollary1_bound(const Rational& log2_q, const Rational& log2_n) {
  if (log2_q < 0 || log2_n < 0) throw ValidationError("corollary1_bound: q and n must be at least 1");
  if (log2_n > log2_q - 200) return std::nullopt;
  return (log2_q - log2_n - 200) / 4;
}

}  // namespace gadgetforge
