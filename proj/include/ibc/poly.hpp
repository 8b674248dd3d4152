#pragma once

#include <span>
#include <vector>

#include "ibc/field.hpp"

namespace ibc {

/// Dense univariate polynomial over F_q, ascending coefficients, trailing zeros
/// stripped. The zero polynomial has no coefficients and degree -1.
class Polynomial {
 public:
  explicit Polynomial(FieldParams field) : field_(std::move(field)) {}
  Polynomial(FieldParams field, std::vector<FieldElement> coeffs);

  const FieldParams& field() const { return field_; }
  std::span<const FieldElement> coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  // Zero beyond the degree.
  FieldElement coeff(std::size_t i) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.field_ == b.field_ && a.c_ == b.c_; }

 private:
  void trim();

  FieldParams field_;
  std::vector<FieldElement> c_;
};

Polynomial operator+(const Polynomial& a, const Polynomial& b);
Polynomial operator-(const Polynomial& a, const Polynomial& b);
Polynomial operator*(const Polynomial& a, const Polynomial& b);

struct DivMod {
  Polynomial quotient;
  Polynomial remainder;
};
DivMod divmod(const Polynomial& a, const Polynomial& b);
// Monic gcd; gcd(0, 0) = 0.
Polynomial gcd(Polynomial a, Polynomial b);
Polynomial monic(const Polynomial& a);
// base^e mod m, deg(m) >= 1.
Polynomial pow_mod(const Polynomial& base, const mpz_class& e, const Polynomial& m);

// Monic product of (x - r) over the multiset of roots.
Polynomial from_roots(std::span<const FieldElement> roots);
// Horner evaluation.
FieldElement evaluate(const Polynomial& poly, const FieldElement& x);
// 18abcd - 4b^3 d + b^2 c^2 - 4ac^3 - 27a^2 d^2 for ax^3 + bx^2 + cx + d.
// Throws Errc::WrongDegree unless deg = 3.
FieldElement discriminant_cubic(const Polynomial& poly);

/// Every x in F_q with poly(x) = 0, sorted, each once.
///
/// Isolates the split part gcd(P, x^q - x) and splits it with Cantor-Zassenhaus
/// probes (odd q) or random trace maps (characteristic 2), at most 64 probes
/// per split. Degree is capped at 8.
std::vector<FieldElement> roots_in_field(const Polynomial& poly, Rng& rng);

/// All a1 with ((a1-a2)(a1-a3)(a2-a3))^2 = D; between 0 and 4 values.
/// Throws Errc::DegenerateRoots when a2 = a3 and Errc::ZeroDiscriminant when D = 0.
std::vector<FieldElement> solve_a1_from_discriminant(const FieldElement& a2, const FieldElement& a3,
                                                     const FieldElement& D);

// All h with poly(t + h) = y for a cubic poly.
std::vector<FieldElement> solve_shift(const Polynomial& poly, const FieldElement& t, const FieldElement& y, Rng& rng);

}  // namespace ibc
