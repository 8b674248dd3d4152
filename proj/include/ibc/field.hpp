#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace ibc {

// Every random draw in the library goes through this engine so a seed fixes the
// whole transcript on any platform.
using Rng = std::mt19937_64;

class FieldElement;

/// Parameters of a finite field F_q, q = p^n, realised as F_p[x]/(f(x)).
///
/// A cheap, copyable handle onto immutable shared data. Construction validates
/// primality of p (64 Miller-Rabin rounds), q >= 5 and, for n > 1, that the
/// modulus is monic and irreducible.
class FieldParams {
 public:
  static FieldParams prime(const mpz_class& p);
  // `modulus` holds the n+1 coefficients of a monic f(x), constant term first.
  static FieldParams extension(const mpz_class& p, std::vector<mpz_class> modulus);

  const mpz_class& characteristic() const;
  std::size_t degree() const;
  const mpz_class& order() const;
  // Empty for prime fields.
  std::span<const mpz_class> modulus() const;
  // Fixed big-endian width of one residue: ceil(bitlen(p) / 8).
  std::size_t residue_bytes() const;
  std::size_t element_bytes() const { return residue_bytes() * degree(); }
  bool odd_order() const;

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement from_uint(std::uint64_t v) const;
  // Reduces v mod p into the constant coefficient.
  FieldElement from_integer(const mpz_class& v) const;
  // Reduces every coefficient mod p; missing high coefficients are zero.
  FieldElement from_coeffs(std::vector<mpz_class> coeffs) const;
  // Inverse of FieldElement::to_integer: base-p digits of `index` in [0, q).
  FieldElement from_index(const mpz_class& index) const;
  // Strict decoding of the canonical byte form; rejects wrong widths and
  // unreduced residues with Errc::Malformed.
  FieldElement decode(std::span<const std::uint8_t> bytes) const;

  friend bool operator==(const FieldParams& a, const FieldParams& b);

 private:
  struct Data;
  explicit FieldParams(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  void validate_modulus() const;

  std::shared_ptr<const Data> d_;

  friend class FieldElement;
  friend FieldElement inv(const FieldElement& x);
  friend FieldElement pow(const FieldElement& x, const mpz_class& e);
  friend std::optional<FieldElement> sqrt(const FieldElement& x);
};

/// An element of F_q in canonical form: n residues in [0, p), constant first.
class FieldElement {
 public:
  const FieldParams& params() const { return params_; }
  std::span<const mpz_class> coeffs() const { return c_; }

  bool is_zero() const;
  bool is_one() const;

  // Base-p integer sum c_i p^i, in [0, q).
  mpz_class to_integer() const;
  std::vector<std::uint8_t> to_bytes() const;
  std::string to_hex() const;

  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& y);
  FieldElement& operator-=(const FieldElement& y);
  FieldElement& operator*=(const FieldElement& y);
  FieldElement& operator/=(const FieldElement& y);

  friend FieldElement operator+(FieldElement x, const FieldElement& y) { return x += y; }
  friend FieldElement operator-(FieldElement x, const FieldElement& y) { return x -= y; }
  friend FieldElement operator*(FieldElement x, const FieldElement& y) { return x *= y; }
  friend FieldElement operator/(FieldElement x, const FieldElement& y) { return x /= y; }

  friend bool operator==(const FieldElement& x, const FieldElement& y);
  // Lexicographic on the coefficient vector, constant term first.
  friend std::strong_ordering operator<=>(const FieldElement& x, const FieldElement& y);

 private:
  FieldElement(FieldParams params, std::vector<mpz_class> c) : params_(std::move(params)), c_(std::move(c)) {}
  void require_same_field(const FieldElement& y) const;

  FieldParams params_;
  std::vector<mpz_class> c_;

  friend class FieldParams;
  friend FieldElement inv(const FieldElement& x);
  friend FieldElement pow(const FieldElement& x, const mpz_class& e);
  friend std::optional<FieldElement> sqrt(const FieldElement& x);
};

// Throws Errc::NonInvertible on zero.
FieldElement inv(const FieldElement& x);
// 0^0 = 1.
FieldElement pow(const FieldElement& x, const mpz_class& e);
// Square root with the lexicographically smaller sign, or nullopt for a
// non-residue. Tonelli-Shanks for odd q, x^(q/2) in characteristic 2.
std::optional<FieldElement> sqrt(const FieldElement& x);
// Uniform over F_q by rejection on bitlen(p)-bit draws.
FieldElement random_element(const FieldParams& params, Rng& rng);
FieldElement random_nonzero(const FieldParams& params, Rng& rng);

// Uniform integer in [0, bound) by rejection; bound > 0.
mpz_class random_below(const mpz_class& bound, Rng& rng);
std::uint64_t random_below(std::uint64_t bound, Rng& rng);

}  // namespace ibc
