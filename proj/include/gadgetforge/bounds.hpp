#pragma once

#include "gadgetforge/algebra.hpp"

#include <cstdint>
#include <optional>

namespace gadgetforge {

// floor(2 log2(1/gamma)) - 100; negative for every desk-scale gamma.
std::int64_t theorem2_h(double gamma);

// eps * h / 4 when h * eps >= 6 and n <= 2^{h(1 - eps)}, else nullopt.
std::optional<Rational> simulation_bound(std::int64_t h, const BigInt& n, const Rational& eps);

// (log2 q - log2 n - 200) / 4 when log2 n <= log2 q - 200, else nullopt.
std::optional<Rational> corollary1_bound(const Rational& log2_q, const Rational& log2_n);

}  // namespace gadgetforge
