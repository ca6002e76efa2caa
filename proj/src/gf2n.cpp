#include "gadgetforge/algebra.hpp"

#include "gadgetforge/errors.hpp"

#include <array>
#include <bit>

namespace gadgetforge {

namespace {

// Index n holds an irreducible polynomial of degree n over GF(2), x^n bit included.
constexpr std::array<std::uint32_t, kMaxGf2Degree + 1> kReductionPolys = {
    0,        // unused
    0x3,      // x + 1
    0x7,      // x^2 + x + 1
    0xB,      // x^3 + x + 1
    0x13,     // x^4 + x + 1
    0x25,     // x^5 + x^2 + 1
    0x43,     // x^6 + x + 1
    0x83,     // x^7 + x + 1
    0x11B,    // x^8 + x^4 + x^3 + x + 1
    0x211,    // x^9 + x^4 + 1
    0x409,    // x^10 + x^3 + 1
    0x805,    // x^11 + x^2 + 1
    0x1053,   // x^12 + x^6 + x^4 + x + 1
    0x201B,   // x^13 + x^4 + x^3 + x + 1
    0x4443,   // x^14 + x^10 + x^6 + x + 1
    0x8003,   // x^15 + x + 1
    0x1100B,  // x^16 + x^12 + x^3 + x + 1
};

int poly_degree(std::uint64_t p) { return p == 0 ? -1 : 63 - std::countl_zero(p); }

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t b) {
  int db = poly_degree(b);
  for (int da = poly_degree(a); da >= db; da = poly_degree(a)) a ^= b << (da - db);
  return a;
}

std::array<bool, kMaxGf2Degree + 1> verify_table() {
  std::array<bool, kMaxGf2Degree + 1> ok{};
  for (unsigned n = 1; n <= kMaxGf2Degree; ++n) {
    ok[n] = poly_degree(kReductionPolys[n]) == static_cast<int>(n) &&
            is_irreducible_gf2(kReductionPolys[n]);
  }
  return ok;
}

}  // namespace

bool is_irreducible_gf2(std::uint32_t poly) {
  int deg = poly_degree(poly);
  if (deg < 1) return false;
  for (std::uint64_t d = 2; poly_degree(d) <= deg / 2; ++d) {
    if (poly_mod(poly, d) == 0) return false;
  }
  return true;
}

std::uint32_t gf2n_reduction_poly(unsigned n) {
  if (n < 1 || n > kMaxGf2Degree) {
    throw UnsupportedError("GF(2^n) supported only for 1 <= n <= 16, got " + std::to_string(n));
  }
  static const auto verified = verify_table();
  if (!verified[n]) throw InvariantViolation("reduction polynomial table entry is reducible");
  return kReductionPolys[n];
}

Gf2nElem::Gf2nElem(std::uint32_t bits, unsigned n) : bits_(bits), n_(n) {
  gf2n_reduction_poly(n);
  if (bits >= (1u << n)) {
    throw ValidationError("value " + std::to_string(bits) + " does not fit GF(2^" +
                          std::to_string(n) + ")");
  }
}

void Gf2nElem::require_same_degree(const Gf2nElem& o) const {
  if (n_ != o.n_) {
    throw DimensionError("GF(2^" + std::to_string(n_) + ") mixed with GF(2^" +
                         std::to_string(o.n_) + ")");
  }
}

Gf2nElem Gf2nElem::operator+(const Gf2nElem& o) const {
  require_same_degree(o);
  return {bits_ ^ o.bits_, n_};
}

Gf2nElem Gf2nElem::operator*(const Gf2nElem& o) const {
  require_same_degree(o);
  std::uint64_t product = 0;
  for (std::uint64_t a = bits_, b = o.bits_; b != 0; b >>= 1, a <<= 1) {
    if (b & 1) product ^= a;
  }
  return {static_cast<std::uint32_t>(poly_mod(product, kReductionPolys[n_])), n_};
}

Gf2nElem Gf2nElem::pow(std::uint64_t e) const {
  Gf2nElem result(1, n_);
  Gf2nElem base = *this;
  while (e != 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

Gf2nElem Gf2nElem::inverse() const {
  if (is_zero()) throw NumericError("inverse of zero in GF(2^n)");
  return pow((std::uint64_t{1} << n_) - 2);
}

Gf2nElem gf2n_eval_poly(std::span<const Gf2nElem> coeffs, const Gf2nElem& x) {
  if (coeffs.empty()) throw ValidationError("gf2n_eval_poly: empty coefficient list");
  for (const auto& c : coeffs) {
    if (c.degree() != x.degree()) throw DimensionError("gf2n_eval_poly: coefficient from a different field");
  }
  Gf2nElem acc = coeffs.back();
  for (std::size_t i = coeffs.size() - 1; i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

}  // namespace gadgetforge
