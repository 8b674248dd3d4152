#include "ibc/poly.hpp"

#include <algorithm>

#include "ibc/error.hpp"

namespace ibc {

namespace {

constexpr int kMaxRootDegree = 8;
constexpr int kSplitProbes = 64;

void require_field(const FieldParams& field, const FieldElement& x) {
  if (!(x.params() == field)) throw Error(Errc::MismatchedField, "coefficient from a different field");
}

void sort_unique(std::vector<FieldElement>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

Polynomial x_plus(const FieldElement& c) {
  return Polynomial(c.params(), {c, c.params().one()});
}

// Splits a monic product of distinct linear factors into its roots.
void split_linear(const Polynomial& g, Rng& rng, std::vector<FieldElement>& out) {
  if (g.degree() <= 0) return;
  if (g.degree() == 1) {
    out.push_back(-g.coeff(0));
    return;
  }
  const FieldParams& F = g.field();
  for (int attempt = 0; attempt < kSplitProbes; ++attempt) {
    Polynomial probe(F);
    if (F.odd_order()) {
      probe = pow_mod(x_plus(random_element(F, rng)), (F.order() - 1) / 2, g) - Polynomial(F, {F.one()});
    } else {
      // Absolute trace of c*x: sum of (c x)^(2^i), i < log2 q.
      Polynomial term = divmod(Polynomial(F, {F.zero(), random_nonzero(F, rng)}), g).remainder;
      probe = term;
      for (std::size_t i = 1; i < F.degree(); ++i) {
        term = divmod(term * term, g).remainder;
        probe = probe + term;
      }
    }
    Polynomial h = gcd(g, probe);
    if (h.degree() > 0 && h.degree() < g.degree()) {
      split_linear(h, rng, out);
      split_linear(divmod(g, h).quotient, rng, out);
      return;
    }
  }
  throw Error(Errc::InternalError, "equal-degree splitting exhausted its probes");
}

// Prime-field residues as raw integers; products accumulate unreduced and are
// reduced once per coefficient.
using Raw = std::vector<mpz_class>;

Raw raw_mulmod(const Raw& a, const Raw& b, const Raw& m, const mpz_class& p) {
  if (a.empty() || b.empty()) return {};
  Raw c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) mpz_addmul(c[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
  // m is monic of degree dm.
  const std::size_t dm = m.size() - 1;
  for (std::size_t k = c.size(); k-- > dm;) {
    mpz_mod(c[k].get_mpz_t(), c[k].get_mpz_t(), p.get_mpz_t());
    if (c[k] == 0) continue;
    for (std::size_t i = 0; i < dm; ++i) mpz_submul(c[k - dm + i].get_mpz_t(), c[k].get_mpz_t(), m[i].get_mpz_t());
  }
  c.resize(std::min(c.size(), dm));
  for (auto& v : c) mpz_mod(v.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
  while (!c.empty() && c.back() == 0) c.pop_back();
  return c;
}

Raw to_raw(const Polynomial& a) {
  Raw out;
  out.reserve(a.coeffs().size());
  for (const auto& c : a.coeffs()) out.push_back(c.coeffs()[0]);
  return out;
}

Polynomial from_raw(const FieldParams& F, const Raw& r) {
  std::vector<FieldElement> c;
  c.reserve(r.size());
  for (const auto& v : r) c.push_back(F.from_integer(v));
  return Polynomial(F, std::move(c));
}

Polynomial pow_mod_prime(const Polynomial& base, const mpz_class& e, const Polynomial& m) {
  const FieldParams& F = m.field();
  const Raw mod = to_raw(monic(m));
  const Raw b = to_raw(divmod(base, m).remainder);
  Raw r{1};
  for (std::size_t bit = mpz_sizeinbase(e.get_mpz_t(), 2); bit-- > 0;) {
    r = raw_mulmod(r, r, mod, F.characteristic());
    if (mpz_tstbit(e.get_mpz_t(), bit)) r = raw_mulmod(r, b, mod, F.characteristic());
  }
  return from_raw(F, r);
}

}  // namespace

Polynomial::Polynomial(FieldParams field, std::vector<FieldElement> coeffs)
    : field_(std::move(field)), c_(std::move(coeffs)) {
  for (const auto& c : c_) require_field(field_, c);
  trim();
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

FieldElement Polynomial::coeff(std::size_t i) const { return i < c_.size() ? c_[i] : field_.zero(); }

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  const std::size_t n = std::max(a.coeffs().size(), b.coeffs().size());
  std::vector<FieldElement> c;
  c.reserve(n);
  for (std::size_t i = 0; i < n; ++i) c.push_back(a.coeff(i) + b.coeff(i));
  return Polynomial(a.field(), std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  const std::size_t n = std::max(a.coeffs().size(), b.coeffs().size());
  std::vector<FieldElement> c;
  c.reserve(n);
  for (std::size_t i = 0; i < n; ++i) c.push_back(a.coeff(i) - b.coeff(i));
  return Polynomial(a.field(), std::move(c));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial(a.field());
  const auto ac = a.coeffs();
  const auto bc = b.coeffs();
  std::vector<FieldElement> c(ac.size() + bc.size() - 1, a.field().zero());
  for (std::size_t i = 0; i < ac.size(); ++i) {
    if (ac[i].is_zero()) continue;
    for (std::size_t j = 0; j < bc.size(); ++j) c[i + j] += ac[i] * bc[j];
  }
  return Polynomial(a.field(), std::move(c));
}

DivMod divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw Error(Errc::NonInvertible, "polynomial division by zero");
  const FieldParams& F = a.field();
  if (a.degree() < b.degree()) return {Polynomial(F), a};

  std::vector<FieldElement> rem(a.coeffs().begin(), a.coeffs().end());
  const auto bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  const FieldElement lead_inv = inv(bc.back());
  std::vector<FieldElement> quot(rem.size() - db, F.zero());
  for (std::size_t k = rem.size(); k-- > db;) {
    if (rem[k].is_zero()) continue;
    FieldElement factor = rem[k] * lead_inv;
    const std::size_t shift = k - db;
    for (std::size_t i = 0; i < db; ++i) rem[shift + i] -= factor * bc[i];
    rem[k] = F.zero();
    quot[shift] = std::move(factor);
  }
  rem.erase(rem.begin() + static_cast<std::ptrdiff_t>(db), rem.end());
  return {Polynomial(F, std::move(quot)), Polynomial(F, std::move(rem))};
}

Polynomial monic(const Polynomial& a) {
  if (a.is_zero()) return a;
  const FieldElement lead_inv = inv(a.coeffs().back());
  std::vector<FieldElement> c;
  c.reserve(a.coeffs().size());
  for (const auto& v : a.coeffs()) c.push_back(v * lead_inv);
  return Polynomial(a.field(), std::move(c));
}

Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = divmod(a, b).remainder;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

Polynomial pow_mod(const Polynomial& base, const mpz_class& e, const Polynomial& m) {
  if (m.degree() < 1) throw Error(Errc::InvalidArgument, "pow_mod needs a modulus of degree >= 1");
  const FieldParams& F = m.field();
  if (F.degree() == 1) return pow_mod_prime(base, e, m);
  Polynomial b = divmod(base, m).remainder;
  Polynomial r(F, {F.one()});
  for (std::size_t bit = mpz_sizeinbase(e.get_mpz_t(), 2); bit-- > 0;) {
    r = divmod(r * r, m).remainder;
    if (mpz_tstbit(e.get_mpz_t(), bit)) r = divmod(r * b, m).remainder;
  }
  return r;
}

Polynomial from_roots(std::span<const FieldElement> roots) {
  if (roots.empty()) throw Error(Errc::InvalidArgument, "from_roots needs at least one root");
  const FieldParams& F = roots.front().params();
  std::vector<FieldElement> c{F.one()};
  for (const auto& r : roots) {
    require_field(F, r);
    // c(x) * (x - r)
    std::vector<FieldElement> next(c.size() + 1, F.zero());
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= c[i] * r;
    }
    c = std::move(next);
  }
  return Polynomial(F, std::move(c));
}

FieldElement evaluate(const Polynomial& poly, const FieldElement& x) {
  FieldElement acc = poly.field().zero();
  const auto c = poly.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) {
    acc *= x;
    acc += c[i];
  }
  return acc;
}

FieldElement discriminant_cubic(const Polynomial& poly) {
  if (poly.degree() != 3) throw Error(Errc::WrongDegree, "discriminant_cubic needs a cubic");
  const FieldParams& F = poly.field();
  const FieldElement a = poly.coeff(3), b = poly.coeff(2), c = poly.coeff(1), d = poly.coeff(0);
  const FieldElement k4 = F.from_uint(4), k18 = F.from_uint(18), k27 = F.from_uint(27);
  const FieldElement b2 = b * b, c2 = c * c;
  return k18 * a * b * c * d - k4 * b2 * b * d + b2 * c2 - k4 * a * c2 * c - k27 * a * a * d * d;
}

std::vector<FieldElement> roots_in_field(const Polynomial& poly, Rng& rng) {
  if (poly.is_zero()) throw Error(Errc::InvalidArgument, "the zero polynomial vanishes everywhere");
  if (poly.degree() > kMaxRootDegree) throw Error(Errc::WrongDegree, "roots_in_field is capped at degree 8");
  const FieldParams& F = poly.field();
  std::vector<FieldElement> out;
  if (poly.degree() == 0) return out;

  const Polynomial f = monic(poly);
  if (f.degree() == 1) {
    out.push_back(-f.coeff(0));
    return out;
  }
  if (f.degree() == 2 && F.odd_order()) {
    const FieldElement& b = f.coeff(1);
    const FieldElement& c = f.coeff(0);
    auto r = sqrt(b * b - F.from_uint(4) * c);
    if (!r) return out;
    const FieldElement half = inv(F.from_uint(2));
    out.push_back((-b + *r) * half);
    out.push_back((-b - *r) * half);
    sort_unique(out);
    return out;
  }

  const Polynomial x(F, {F.zero(), F.one()});
  const Polynomial split = gcd(f, pow_mod(x, F.order(), f) - x);
  split_linear(split, rng, out);
  sort_unique(out);
  return out;
}

std::vector<FieldElement> solve_a1_from_discriminant(const FieldElement& a2, const FieldElement& a3,
                                                     const FieldElement& D) {
  if (a2 == a3) throw Error(Errc::DegenerateRoots, "a2 and a3 must differ");
  if (D.is_zero()) throw Error(Errc::ZeroDiscriminant, "discriminant must be nonzero");
  const FieldParams& F = a2.params();
  const FieldElement gap = a2 - a3;
  // (a1-a2)(a1-a3) = s with s^2 = D / (a2-a3)^2.
  const auto root = sqrt(D / (gap * gap));
  std::vector<FieldElement> out;
  if (!root) return out;

  std::vector<FieldElement> signs{*root};
  if (-*root != *root) signs.push_back(-*root);
  // Char-2 quadratics go through the randomised splitter; its answer does not
  // depend on the probes, so a fixed seed keeps this function pure.
  Rng local(0x1bc);
  for (const auto& s : signs) {
    Polynomial q(F, {a2 * a3 - s, -(a2 + a3), F.one()});
    for (auto& a1 : roots_in_field(q, local)) {
      if (a1 != a2 && a1 != a3) out.push_back(std::move(a1));
    }
  }
  sort_unique(out);
  return out;
}

std::vector<FieldElement> solve_shift(const Polynomial& poly, const FieldElement& t, const FieldElement& y, Rng& rng) {
  if (poly.degree() != 3) throw Error(Errc::WrongDegree, "solve_shift needs a cubic");
  const Polynomial shifted = poly - Polynomial(poly.field(), {y});
  std::vector<FieldElement> out;
  for (const auto& u : roots_in_field(shifted, rng)) out.push_back(u - t);
  sort_unique(out);
  return out;
}

}  // namespace ibc
