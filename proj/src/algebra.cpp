#include "gadgetforge/algebra.hpp"

#include "gadgetforge/errors.hpp"

#include <gmp.h>

#include <cctype>
#include <cmath>

namespace gadgetforge {

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return BigInt(0);
  BigInt r;
  mpz_bin_uiui(r.backend().data(), n, k);
  return r;
}

Rational exact_rational(double x) {
  if (!std::isfinite(x)) throw ValidationError("exact_rational: non-finite value");
  Rational r;
  mpq_set_d(r.backend().data(), x);
  return r;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&] { return ValidationError("cannot parse rational: '" + s + "'"); };
  if (s.empty()) throw bad();
  if (auto slash = s.find('/'); slash != std::string::npos) {
    try {
      BigInt num(s.substr(0, slash));
      BigInt den(s.substr(slash + 1));
      if (den == 0) throw bad();
      return Rational(num, den);
    } catch (const std::runtime_error&) {
      throw bad();
    }
  }
  bool negative = false;
  std::size_t pos = 0;
  if (s[0] == '-' || s[0] == '+') {
    negative = s[0] == '-';
    pos = 1;
  }
  BigInt num = 0;
  BigInt den = 1;
  bool seen_dot = false;
  bool seen_digit = false;
  for (; pos < s.size(); ++pos) {
    char ch = s[pos];
    if (ch == '.') {
      if (seen_dot) throw bad();
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      num = num * 10 + (ch - '0');
      if (seen_dot) den *= 10;
      seen_digit = true;
    } else {
      throw bad();
    }
  }
  if (!seen_digit) throw bad();
  Rational r(num, den);
  return negative ? Rational(-r) : r;
}

std::string to_fraction_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

BigInt pow2(std::uint64_t e) {
  BigInt r;
  mpz_setbit(r.backend().data(), e);
  return r;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2u, 3u, 5u}) {
    if (n % p == 0) return n == p;
  }
  for (std::uint64_t i = 7; i * i <= n; i += 2) {
    if (n % i == 0) return false;
  }
  return true;
}

// --- FieldElem --------------------------------------------------------------

namespace {

void require_same_modulus(const FieldElem& a, const FieldElem& b) {
  if (a.modulus() != b.modulus()) {
    throw DimensionError("field elements from F_" + std::to_string(a.modulus()) + " and F_" +
                         std::to_string(b.modulus()));
  }
}

}  // namespace

FieldElem FieldElem::operator+(const FieldElem& o) const {
  require_same_modulus(*this, o);
  std::uint64_t s = std::uint64_t{value_} + o.value_;
  return {static_cast<std::uint32_t>(s % modulus_), modulus_};
}

FieldElem FieldElem::operator-(const FieldElem& o) const {
  require_same_modulus(*this, o);
  std::uint64_t s = std::uint64_t{value_} + modulus_ - o.value_;
  return {static_cast<std::uint32_t>(s % modulus_), modulus_};
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
  require_same_modulus(*this, o);
  std::uint64_t p = std::uint64_t{value_} * o.value_;
  return {static_cast<std::uint32_t>(p % modulus_), modulus_};
}

FieldElem FieldElem::operator/(const FieldElem& o) const { return *this * o.inverse(); }

FieldElem FieldElem::operator-() const {
  return {value_ == 0 ? 0 : modulus_ - value_, modulus_};
}

FieldElem FieldElem::pow(std::uint64_t e) const {
  FieldElem result(1 % modulus_, modulus_);
  FieldElem base = *this;
  while (e != 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

FieldElem FieldElem::inverse() const {
  if (value_ == 0) throw NumericError("inverse of zero in F_" + std::to_string(modulus_));
  return pow(modulus_ - 2);
}

// --- PrimeField -------------------------------------------------------------

PrimeField::PrimeField(std::uint32_t q) : q_(q) {
  if (!is_prime(q)) throw ValidationError("modulus " + std::to_string(q) + " is not prime");
}

FieldElem PrimeField::operator()(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(q_);
  if (r < 0) r += q_;
  return FieldElem(static_cast<std::uint32_t>(r), q_);
}

bool PrimeField::is_square(const FieldElem& a) const {
  if (a.modulus() != q_) throw DimensionError("element is not in this field");
  if (a.is_zero() || q_ == 2) return true;
  return a.pow((q_ - 1) / 2).value() == 1;
}

FieldElem find_nonresidue(std::uint32_t q) {
  PrimeField field(q);
  if (q == 2) throw UnsupportedError("F_2 has no quadratic non-residue");
  for (std::uint32_t d = 1; d < q; ++d) {
    if (!field.is_square(field(d))) return field(d);
  }
  throw InvariantViolation("no non-residue found in F_" + std::to_string(q));
}

// --- ExtFieldElem -----------------------------------------------------------

void ExtFieldElem::require_same_context(const ExtFieldElem& o) const {
  if (modulus() != o.modulus() || nonresidue_ != o.nonresidue_) {
    throw DimensionError("extension-field elements from different contexts");
  }
}

ExtFieldElem ExtFieldElem::operator+(const ExtFieldElem& o) const {
  require_same_context(o);
  return {c0_ + o.c0_, c1_ + o.c1_, nonresidue_};
}

ExtFieldElem ExtFieldElem::operator-(const ExtFieldElem& o) const {
  require_same_context(o);
  return {c0_ - o.c0_, c1_ - o.c1_, nonresidue_};
}

ExtFieldElem ExtFieldElem::operator*(const ExtFieldElem& o) const {
  require_same_context(o);
  // (a0 + a1 w)(b0 + b1 w) = a0 b0 + d a1 b1 + (a0 b1 + a1 b0) w
  std::uint64_t q = modulus();
  std::uint64_t a0 = c0_.value(), a1 = c1_.value();
  std::uint64_t b0 = o.c0_.value(), b1 = o.c1_.value();
  std::uint64_t r0 = (a0 * b0 % q + (a1 * b1 % q) * nonresidue_ % q) % q;
  std::uint64_t r1 = (a0 * b1 % q + a1 * b0 % q) % q;
  auto q32 = static_cast<std::uint32_t>(q);
  return {FieldElem(static_cast<std::uint32_t>(r0), q32), FieldElem(static_cast<std::uint32_t>(r1), q32),
          nonresidue_};
}

ExtFieldElem ExtFieldElem::operator/(const ExtFieldElem& o) const { return *this * o.inverse(); }

ExtFieldElem ExtFieldElem::operator-() const { return {-c0_, -c1_, nonresidue_}; }

ExtFieldElem ExtFieldElem::pow(std::uint64_t e) const {
  ExtFieldElem result(FieldElem(1, modulus()), FieldElem(0, modulus()), nonresidue_);
  ExtFieldElem base = *this;
  while (e != 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

ExtFieldElem ExtFieldElem::inverse() const {
  if (is_zero()) throw NumericError("inverse of zero in F_{q^2}");
  // 1 / (a0 + a1 w) = (a0 - a1 w) / (a0^2 - d a1^2); the norm is nonzero since d is a non-residue.
  FieldElem d(nonresidue_, modulus());
  FieldElem norm = c0_ * c0_ - d * c1_ * c1_;
  FieldElem inv = norm.inverse();
  return {c0_ * inv, -c1_ * inv, nonresidue_};
}

// --- ExtField ---------------------------------------------------------------

ExtField::ExtField(std::uint32_t q) : base_(q), d_(0) {
  if (q == 2) throw UnsupportedError("quadratic extension requires an odd characteristic");
  d_ = find_nonresidue(q).value();
}

ExtFieldElem ExtField::operator()(std::int64_t c0, std::int64_t c1) const {
  return ExtFieldElem(base_(c0), base_(c1), d_);
}

std::vector<ExtFieldElem> ExtField::elements() const {
  std::vector<ExtFieldElem> out;
  std::uint32_t q = base_.order();
  out.reserve(std::size_t{q} * q);
  for (std::uint32_t c1 = 0; c1 < q; ++c1) {
    for (std::uint32_t c0 = 0; c0 < q; ++c0) out.push_back((*this)(c0, c1));
  }
  return out;
}

bool ext_is_square(const ExtFieldElem& a) {
  std::uint64_t q = a.modulus();
  if (q == 2) throw UnsupportedError("ext_is_square: characteristic 2 is not supported");
  if (a.is_zero()) return true;
  ExtFieldElem r = a.pow((q * q - 1) / 2);
  return r.c0().value() == 1 && r.c1().is_zero();
}

}  // namespace gadgetforge
