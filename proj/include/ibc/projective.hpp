#pragma once

#include <optional>

#include "ibc/field.hpp"

namespace ibc {

/// A point of the projective line P^1(F_q): a field value or infinity.
class ProjPoint {
 public:
  static ProjPoint infinity() { return ProjPoint(); }
  ProjPoint(FieldElement v) : v_(std::move(v)) {}  // NOLINT(google-explicit-constructor)

  bool is_infinity() const { return !v_.has_value(); }
  // Throws Errc::InvalidArgument at infinity.
  const FieldElement& value() const;

  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;

 private:
  ProjPoint() = default;
  std::optional<FieldElement> v_;
};

/// z -> (az + b) / (cz + d) with ad - bc != 0, a representative of its PGL_2 class.
class MobiusMap {
 public:
  // Throws Errc::InvalidArgument for a singular matrix.
  MobiusMap(FieldElement a, FieldElement b, FieldElement c, FieldElement d);
  static MobiusMap identity(const FieldParams& field);

  const FieldElement& a() const { return a_; }
  const FieldElement& b() const { return b_; }
  const FieldElement& c() const { return c_; }
  const FieldElement& d() const { return d_; }
  FieldElement determinant() const { return a_ * d_ - b_ * c_; }
  // The adjugate (d, -b, -c, a).
  MobiusMap inverse() const;

  friend bool operator==(const MobiusMap&, const MobiusMap&) = default;

 private:
  FieldElement a_, b_, c_, d_;
};

ProjPoint apply_mask(const MobiusMap& f, const ProjPoint& z);
ProjPoint invert_mask(const MobiusMap& f, const ProjPoint& w);

// Uniform over PGL_2(F_q): uniform invertible matrices, scalars collapse evenly.
MobiusMap random_mobius(const FieldParams& field, Rng& rng);

/// ((z1 - z3)(z2 - z4)) / ((z1 - z4)(z2 - z3)), evaluated in homogeneous
/// coordinates so that infinity cancels out of both factors it appears in.
/// Throws Errc::DegenerateQuadruple when the denominator vanishes.
FieldElement cross_ratio(const ProjPoint& z1, const ProjPoint& z2, const ProjPoint& z3, const ProjPoint& z4);

/// The z4 with cross_ratio(z1, z2, z3, z4) = I:
///   z4 = ((z1 - z3) z2 - I (z2 - z3) z1) / ((z1 - z3) - I (z2 - z3)).
/// Throws Errc::DistinctnessViolation unless z1, z2, z3 are pairwise distinct,
/// Errc::InvalidArgument for I = 0, Errc::DegenerateDenominator when the
/// denominator vanishes.
FieldElement solve_fourth(const FieldElement& z1, const FieldElement& z2, const FieldElement& z3, const FieldElement& I);

}  // namespace ibc
