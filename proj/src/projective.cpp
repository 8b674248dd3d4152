#include "ibc/projective.hpp"

#include "ibc/error.hpp"

namespace ibc {

namespace {

// Homogeneous coordinates (x : y); finite v is (v : 1), infinity is (1 : 0).
struct Homog {
  FieldElement x, y;
};

Homog lift(const ProjPoint& p, const FieldParams& F) {
  if (p.is_infinity()) return {F.one(), F.zero()};
  return {p.value(), F.one()};
}

FieldElement bracket(const Homog& u, const Homog& v) { return u.x * v.y - v.x * u.y; }

}  // namespace

const FieldElement& ProjPoint::value() const {
  if (!v_) throw Error(Errc::InvalidArgument, "the point at infinity has no field value");
  return *v_;
}

MobiusMap::MobiusMap(FieldElement a, FieldElement b, FieldElement c, FieldElement d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  if (determinant().is_zero()) throw Error(Errc::InvalidArgument, "Mobius map needs ad - bc != 0");
}

MobiusMap MobiusMap::identity(const FieldParams& field) {
  return MobiusMap(field.one(), field.zero(), field.zero(), field.one());
}

MobiusMap MobiusMap::inverse() const { return MobiusMap(d_, -b_, -c_, a_); }

ProjPoint apply_mask(const MobiusMap& f, const ProjPoint& z) {
  if (z.is_infinity()) {
    if (f.c().is_zero()) return ProjPoint::infinity();
    return f.a() / f.c();
  }
  const FieldElement den = f.c() * z.value() + f.d();
  if (den.is_zero()) return ProjPoint::infinity();
  return (f.a() * z.value() + f.b()) / den;
}

ProjPoint invert_mask(const MobiusMap& f, const ProjPoint& w) { return apply_mask(f.inverse(), w); }

MobiusMap random_mobius(const FieldParams& field, Rng& rng) {
  for (;;) {
    FieldElement a = random_element(field, rng);
    FieldElement b = random_element(field, rng);
    FieldElement c = random_element(field, rng);
    FieldElement d = random_element(field, rng);
    if (!(a * d - b * c).is_zero()) return MobiusMap(a, b, c, d);
  }
}

FieldElement cross_ratio(const ProjPoint& z1, const ProjPoint& z2, const ProjPoint& z3, const ProjPoint& z4) {
  const ProjPoint* finite = nullptr;
  for (const ProjPoint* p : {&z1, &z2, &z3, &z4}) {
    if (!p->is_infinity()) {
      finite = p;
      break;
    }
  }
  if (finite == nullptr) throw Error(Errc::DegenerateQuadruple, "all four points are infinity");
  const FieldParams& F = finite->value().params();
  const Homog h1 = lift(z1, F), h2 = lift(z2, F), h3 = lift(z3, F), h4 = lift(z4, F);
  const FieldElement den = bracket(h1, h4) * bracket(h2, h3);
  if (den.is_zero()) throw Error(Errc::DegenerateQuadruple, "cross-ratio denominator vanishes");
  return bracket(h1, h3) * bracket(h2, h4) / den;
}

FieldElement solve_fourth(const FieldElement& z1, const FieldElement& z2, const FieldElement& z3, const FieldElement& I) {
  if (z1 == z2 || z1 == z3 || z2 == z3) throw Error(Errc::DistinctnessViolation, "z1, z2, z3 must be pairwise distinct");
  if (I.is_zero()) throw Error(Errc::InvalidArgument, "the invariant must be nonzero");
  const FieldElement A = z1 - z3;
  const FieldElement B = z2 - z3;
  const FieldElement den = A - I * B;
  if (den.is_zero()) throw Error(Errc::DegenerateDenominator, "(z1 - z3) - I (z2 - z3) vanishes");
  return (A * z2 - I * B * z1) / den;
}

}  // namespace ibc
