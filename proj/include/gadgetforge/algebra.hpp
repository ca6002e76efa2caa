#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gadgetforge {

using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

// ---------------------------------------------------------------------------
// Rationals and binomials
// ---------------------------------------------------------------------------

BigInt binomial(std::uint64_t n, std::uint64_t k);

// Exact value of a binary double (every finite double is a dyadic rational).
Rational exact_rational(double x);

// Parses "a/b", "-a", or a plain decimal such as "0.25" exactly.
Rational parse_rational(std::string_view text);

// Always "num/den", with den > 0.
std::string to_fraction_string(const Rational& r);

BigInt pow2(std::uint64_t e);

// ---------------------------------------------------------------------------
// Prime fields F_q
// ---------------------------------------------------------------------------

bool is_prime(std::uint64_t n);

class PrimeField;

class FieldElem {
 public:
  std::uint32_t value() const { return value_; }
  std::uint32_t modulus() const { return modulus_; }

  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator-(const FieldElem& o) const;
  FieldElem operator*(const FieldElem& o) const;
  FieldElem operator/(const FieldElem& o) const;
  FieldElem operator-() const;
  FieldElem pow(std::uint64_t e) const;
  FieldElem inverse() const;
  bool is_zero() const { return value_ == 0; }

  friend bool operator==(const FieldElem&, const FieldElem&) = default;

 private:
  friend class PrimeField;
  friend class ExtFieldElem;
  FieldElem(std::uint32_t value, std::uint32_t modulus) : value_(value), modulus_(modulus) {}

  std::uint32_t value_ = 0;
  std::uint32_t modulus_ = 0;
};

// The field context checks primality once; elements are created through it.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t q);

  std::uint32_t order() const { return q_; }
  FieldElem operator()(std::int64_t v) const;
  FieldElem zero() const { return FieldElem(0, q_); }
  FieldElem one() const { return FieldElem(1 % q_, q_); }

  // Euler's criterion; zero counts as a square.
  bool is_square(const FieldElem& a) const;

 private:
  std::uint32_t q_;
};

// Smallest d in F_q with no square root. Rejects q = 2.
FieldElem find_nonresidue(std::uint32_t q);

// ---------------------------------------------------------------------------
// Quadratic extension F_{q^2} = F_q[w] / (w^2 - d)
// ---------------------------------------------------------------------------

class ExtField;

class ExtFieldElem {
 public:
  const FieldElem& c0() const { return c0_; }
  const FieldElem& c1() const { return c1_; }
  std::uint32_t modulus() const { return c0_.modulus(); }
  std::uint32_t nonresidue() const { return nonresidue_; }

  ExtFieldElem operator+(const ExtFieldElem& o) const;
  ExtFieldElem operator-(const ExtFieldElem& o) const;
  ExtFieldElem operator*(const ExtFieldElem& o) const;
  ExtFieldElem operator/(const ExtFieldElem& o) const;
  ExtFieldElem operator-() const;
  ExtFieldElem pow(std::uint64_t e) const;
  ExtFieldElem inverse() const;
  bool is_zero() const { return c0_.is_zero() && c1_.is_zero(); }

  friend bool operator==(const ExtFieldElem&, const ExtFieldElem&) = default;

 private:
  friend class ExtField;
  ExtFieldElem(FieldElem c0, FieldElem c1, std::uint32_t d) : c0_(c0), c1_(c1), nonresidue_(d) {}
  void require_same_context(const ExtFieldElem& o) const;

  FieldElem c0_;
  FieldElem c1_;
  std::uint32_t nonresidue_;
};

class ExtField {
 public:
  // q must be an odd prime; w^2 = find_nonresidue(q).
  explicit ExtField(std::uint32_t q);

  std::uint32_t base_order() const { return base_.order(); }
  std::uint32_t nonresidue() const { return d_; }
  const PrimeField& base() const { return base_; }

  ExtFieldElem operator()(std::int64_t c0, std::int64_t c1) const;
  ExtFieldElem zero() const { return (*this)(0, 0); }
  ExtFieldElem one() const { return (*this)(1, 0); }
  ExtFieldElem w() const { return (*this)(0, 1); }

  // All q^2 elements, ordered by c0 + q*c1.
  std::vector<ExtFieldElem> elements() const;

 private:
  PrimeField base_;
  std::uint32_t d_;
};

// True iff a = c^2 for some c in F_{q^2}.
bool ext_is_square(const ExtFieldElem& a);

// ---------------------------------------------------------------------------
// Binary fields GF(2^n), n <= 16
// ---------------------------------------------------------------------------

inline constexpr unsigned kMaxGf2Degree = 16;

// Reduction polynomial for GF(2^n), including the x^n term.
std::uint32_t gf2n_reduction_poly(unsigned n);

// Exhaustive trial division by every polynomial of degree 1..deg/2.
bool is_irreducible_gf2(std::uint32_t poly);

class Gf2nElem {
 public:
  Gf2nElem(std::uint32_t bits, unsigned n);

  std::uint32_t bits() const { return bits_; }
  unsigned degree() const { return n_; }

  Gf2nElem operator+(const Gf2nElem& o) const;
  Gf2nElem operator*(const Gf2nElem& o) const;
  Gf2nElem pow(std::uint64_t e) const;
  Gf2nElem inverse() const;
  bool is_zero() const { return bits_ == 0; }

  friend bool operator==(const Gf2nElem&, const Gf2nElem&) = default;

 private:
  void require_same_degree(const Gf2nElem& o) const;

  std::uint32_t bits_;
  unsigned n_;
};

// Horner evaluation of sum coeffs[i] * x^i.
Gf2nElem gf2n_eval_poly(std::span<const Gf2nElem> coeffs, const Gf2nElem& x);

}  // namespace gadgetforge
