#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <vector>

#include "qemac/errors.hpp"

namespace qemac {

/// GF(p^r) with a deterministic modulus: the lexicographically-first monic
/// irreducible polynomial of degree r over GF(p), where "first" orders the
/// low coefficients (c_0,...,c_{r-1}) as base-p digits of an integer.
///
/// Elements are stored as packed codes in [0, q): code = sum_i c_i p^i for
/// the polynomial-basis coefficient vector (c_0,...,c_{r-1}). Fields are
/// interned and immutable, so Fq values may hold plain pointers to them.
class Field {
 public:
  /// Interned accessor; validates p prime, r >= 1, p^r <= 2^31.
  static const Field& get(std::uint32_t p, std::uint32_t r);

  std::uint32_t p() const { return p_; }
  std::uint32_t r() const { return r_; }
  std::uint64_t q() const { return q_; }

  /// Monic modulus, coefficients (c_0,...,c_r) with c_r = 1. For r = 1 this
  /// is (0, 1), i.e. the trivial modulus x.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  // Arithmetic on packed element codes.
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg(std::uint32_t a) const;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;

  /// Field trace tr(x) = sum_{i<r} x^{p^i}, returned as an element of GF(p).
  std::uint32_t trace(std::uint32_t a) const;

  /// Embeds an integer via the prime subfield (v mod p).
  std::uint32_t from_int(std::int64_t v) const;

  std::vector<std::uint32_t> coeffs(std::uint32_t code) const;
  std::uint32_t code_from_coeffs(const std::vector<std::uint32_t>& c) const;

  bool operator==(const Field& o) const { return this == &o; }

 private:
  Field(std::uint32_t p, std::uint32_t r);

  std::uint32_t mul_slow(std::uint32_t a, std::uint32_t b) const;

  std::uint32_t p_, r_;
  std::uint64_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint64_t> p_pow_;               // p^0..p^r
  std::vector<std::vector<std::uint32_t>> red_;    // x^{r+j} mod modulus, j in [0, r-2]
  std::vector<std::uint32_t> mul_table_;           // q*q lookup when q small, else empty
  std::vector<std::uint32_t> inv_table_;
};

/// Convenience alias of Field::get.
inline const Field& construct_field(std::uint32_t p, std::uint32_t r) { return Field::get(p, r); }

class Fq;

/// tr(x) as an element of the prime subfield, in [0, p).
std::uint32_t field_trace(const Fq& x);

/// One element of a GF(p^r). A default-constructed value is an "unbound"
/// signed integer literal (Eigen materialises Scalar(0), Scalar(1), and
/// Scalar(-1) in generic code paths); it binds to a field, reducing mod p,
/// on first contact with a bound operand.
class Fq {
 public:
  Fq() : field_(nullptr), v_(0) {}
  Fq(long v) : field_(nullptr), v_(v) {}  // NOLINT: implicit for Eigen literals
  Fq(int v) : Fq(static_cast<long>(v)) {}  // NOLINT
  Fq(const Field& f, std::uint32_t code) : field_(&f), v_(code) {}

  bool bound() const { return field_ != nullptr; }
  const Field& field() const {
    require(bound(), errc::invalid_argument, "unbound Fq has no field");
    return *field_;
  }
  std::uint32_t code() const { return static_cast<std::uint32_t>(v_); }

  bool is_zero() const { return v_ == 0; }

  Fq& operator+=(const Fq& o);
  Fq& operator-=(const Fq& o);
  Fq& operator*=(const Fq& o);
  Fq& operator/=(const Fq& o);

  friend Fq operator+(Fq a, const Fq& b) { return a += b; }
  friend Fq operator-(Fq a, const Fq& b) { return a -= b; }
  friend Fq operator*(Fq a, const Fq& b) { return a *= b; }
  friend Fq operator/(Fq a, const Fq& b) { return a /= b; }
  friend Fq operator-(const Fq& a);

  Fq inverse() const;
  friend bool operator==(const Fq& a, const Fq& b);
  friend bool operator!=(const Fq& a, const Fq& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const Fq& v);

 private:
  // When field_ is null, v_ holds a signed literal not yet reduced into any
  // field; when bound, v_ holds the element code in [0, q).
  static void bind_pair(Fq& a, Fq& b);

  const Field* field_;
  std::int64_t v_;
};

using FqMatrix = Eigen::Matrix<Fq, Eigen::Dynamic, Eigen::Dynamic>;
using FqVector = Eigen::Matrix<Fq, Eigen::Dynamic, 1>;

// Bound-element matrix builders (Matrix::Zero & friends would produce
// unbound scalars; these keep every entry attached to a field).
FqMatrix fq_zeros(const Field& f, Eigen::Index rows, Eigen::Index cols);
FqMatrix fq_identity(const Field& f, Eigen::Index n);
FqMatrix fq_from_codes(const Field& f, Eigen::Index rows, Eigen::Index cols,
                       const std::vector<std::uint32_t>& row_major_codes);
FqMatrix fq_from_ints(const Field& f, Eigen::Index rows, Eigen::Index cols,
                      const std::vector<std::int64_t>& row_major_values);
FqMatrix fq_random(const Field& f, Eigen::Index rows, Eigen::Index cols, class Rng& rng);

bool fq_equal(const FqMatrix& a, const FqMatrix& b);
bool fq_is_zero(const FqMatrix& a);
FqMatrix hcat(const FqMatrix& a, const FqMatrix& b);
FqMatrix vcat(const FqMatrix& a, const FqMatrix& b);
std::vector<std::uint32_t> fq_codes(const FqMatrix& m);  // row-major dump

}  // namespace qemac

namespace Eigen {

template <>
struct NumTraits<qemac::Fq> {
  using Real = qemac::Fq;
  using NonInteger = qemac::Fq;
  using Nested = qemac::Fq;
  using Literal = long;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 8,
  };
  static inline qemac::Fq epsilon() { return qemac::Fq(0); }
  static inline qemac::Fq dummy_precision() { return qemac::Fq(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
