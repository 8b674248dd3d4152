#include "ibc/field.hpp"

#include <algorithm>
#include <array>
#include <limits>

#include "ibc/error.hpp"

namespace ibc {

struct FieldParams::Data {
  mpz_class p;
  std::size_t n = 1;
  mpz_class q;
  std::vector<mpz_class> modulus;  // monic, n+1 coefficients; empty when n == 1
  std::size_t rbytes = 0;
  // q - 1 = 2^two_adicity * odd_part, used by Tonelli-Shanks.
  unsigned long two_adicity = 0;
  mpz_class odd_part;
  std::vector<mpz_class> nonresidue;  // empty unless needed (odd q, q = 1 mod 4)
};

namespace {

// Polynomials over F_p as plain residue vectors, constant term first. Only used
// to check irreducibility of an extension modulus.
using FpPoly = std::vector<mpz_class>;

void trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

FpPoly fp_mod(FpPoly a, const FpPoly& b, const mpz_class& p) {
  trim(a);
  mpz_class lead_inv;
  mpz_invert(lead_inv.get_mpz_t(), b.back().get_mpz_t(), p.get_mpz_t());
  while (a.size() >= b.size()) {
    mpz_class c = a.back() * lead_inv % p;
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      a[shift + i] = (a[shift + i] - c * b[i]) % p;
      if (a[shift + i] < 0) a[shift + i] += p;
    }
    trim(a);
  }
  return a;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, const mpz_class& p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    FpPoly r = fp_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace

// ---------------------------------------------------------------------------
// FieldParams

FieldParams FieldParams::prime(const mpz_class& p) {
  if (p < 5) throw Error(Errc::InvalidParams, "field order must be at least 5");
  if (mpz_probab_prime_p(p.get_mpz_t(), 64) == 0) throw Error(Errc::InvalidParams, "modulus is not prime");
  auto d = std::make_shared<Data>();
  d->p = p;
  d->n = 1;
  d->q = p;
  d->rbytes = (mpz_sizeinbase(p.get_mpz_t(), 2) + 7) / 8;
  mpz_class m = p - 1;
  d->two_adicity = mpz_scan1(m.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d->odd_part.get_mpz_t(), m.get_mpz_t(), d->two_adicity);

  FieldParams params(d);
  if (d->two_adicity >= 2) {
    for (mpz_class c = 2;; ++c) {
      FieldElement z = params.from_integer(c);
      if (pow(z, (p - 1) / 2) != params.one()) {
        d->nonresidue = {c};
        break;
      }
    }
  }
  return params;
}

FieldParams FieldParams::extension(const mpz_class& p, std::vector<mpz_class> modulus) {
  if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 64) == 0) throw Error(Errc::InvalidParams, "characteristic is not prime");
  if (modulus.size() < 2) throw Error(Errc::InvalidParams, "modulus must have degree >= 1");
  for (auto& c : modulus) {
    c %= p;
    if (c < 0) c += p;
  }
  if (modulus.back() != 1) throw Error(Errc::InvalidParams, "modulus must be monic");
  const std::size_t n = modulus.size() - 1;
  if (n == 1) return prime(p);

  auto d = std::make_shared<Data>();
  d->p = p;
  d->n = n;
  mpz_pow_ui(d->q.get_mpz_t(), p.get_mpz_t(), n);
  if (d->q < 5) throw Error(Errc::InvalidParams, "field order must be at least 5");
  d->modulus = std::move(modulus);
  d->rbytes = (mpz_sizeinbase(p.get_mpz_t(), 2) + 7) / 8;
  if (p != 2) {
    mpz_class m = d->q - 1;
    d->two_adicity = mpz_scan1(m.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(d->odd_part.get_mpz_t(), m.get_mpz_t(), d->two_adicity);
  }

  FieldParams params(d);
  params.validate_modulus();

  if (p != 2 && d->two_adicity >= 2) {
    // Constants of F_p are all squares when n is even, so start the search at x.
    mpz_class start = p;
    for (mpz_class i = 0; i < d->q; ++i) {
      mpz_class idx = (start + i) % d->q;
      if (idx == 0) continue;
      FieldElement z = params.from_index(idx);
      if (pow(z, (d->q - 1) / 2) != params.one()) {
        d->nonresidue.assign(z.coeffs().begin(), z.coeffs().end());
        break;
      }
    }
  }
  return params;
}

void FieldParams::validate_modulus() const {
  const mpz_class& p = d_->p;
  const std::size_t n = d_->n;
  const FpPoly& f = d_->modulus;

  // Ben-Or: f is irreducible iff gcd(f, x^(p^k) - x) = 1 for all k <= n/2.
  // k = 1 rules out roots in F_p. In F_p[x]/(f) the Frobenius image of x is
  // just pow(x, p).
  std::vector<mpz_class> xc(n, 0);
  xc[1] = 1;
  FieldElement x(*this, xc);
  FieldElement frob = x;
  for (std::size_t k = 1; k <= n / 2; ++k) {
    frob = pow(frob, p);
    FieldElement diff = frob - x;
    FpPoly g(diff.coeffs().begin(), diff.coeffs().end());
    FpPoly common = fp_gcd(f, g, p);
    if (common.size() != 1) throw Error(Errc::InvalidParams, "modulus is reducible");
  }
}

const mpz_class& FieldParams::characteristic() const { return d_->p; }
std::size_t FieldParams::degree() const { return d_->n; }
const mpz_class& FieldParams::order() const { return d_->q; }
std::span<const mpz_class> FieldParams::modulus() const { return d_->modulus; }
std::size_t FieldParams::residue_bytes() const { return d_->rbytes; }
bool FieldParams::odd_order() const { return d_->p != 2; }

FieldElement FieldParams::zero() const { return FieldElement(*this, std::vector<mpz_class>(d_->n, 0)); }

FieldElement FieldParams::one() const {
  std::vector<mpz_class> c(d_->n, 0);
  c[0] = 1;
  return FieldElement(*this, std::move(c));
}

FieldElement FieldParams::from_uint(std::uint64_t v) const {
  mpz_class m;
  mpz_import(m.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return from_integer(m);
}

FieldElement FieldParams::from_integer(const mpz_class& v) const {
  std::vector<mpz_class> c(d_->n, 0);
  mpz_fdiv_r(c[0].get_mpz_t(), v.get_mpz_t(), d_->p.get_mpz_t());
  return FieldElement(*this, std::move(c));
}

FieldElement FieldParams::from_coeffs(std::vector<mpz_class> coeffs) const {
  if (coeffs.size() > d_->n) throw Error(Errc::InvalidArgument, "too many coefficients for field degree");
  coeffs.resize(d_->n, 0);
  for (auto& c : coeffs) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), d_->p.get_mpz_t());
  return FieldElement(*this, std::move(coeffs));
}

FieldElement FieldParams::from_index(const mpz_class& index) const {
  mpz_class rest;
  mpz_fdiv_r(rest.get_mpz_t(), index.get_mpz_t(), d_->q.get_mpz_t());
  std::vector<mpz_class> c(d_->n);
  for (std::size_t i = 0; i < d_->n; ++i) {
    mpz_fdiv_qr(rest.get_mpz_t(), c[i].get_mpz_t(), rest.get_mpz_t(), d_->p.get_mpz_t());
  }
  return FieldElement(*this, std::move(c));
}

FieldElement FieldParams::decode(std::span<const std::uint8_t> bytes) const {
  if (bytes.size() != element_bytes()) throw Error(Errc::Malformed, "field element has wrong width");
  std::vector<mpz_class> c(d_->n);
  for (std::size_t i = 0; i < d_->n; ++i) {
    mpz_import(c[i].get_mpz_t(), d_->rbytes, 1, 1, 1, 0, bytes.data() + i * d_->rbytes);
    if (c[i] >= d_->p) throw Error(Errc::Malformed, "field element residue is not reduced");
  }
  return FieldElement(*this, std::move(c));
}

bool operator==(const FieldParams& a, const FieldParams& b) {
  if (a.d_ == b.d_) return true;
  return a.d_->p == b.d_->p && a.d_->n == b.d_->n && a.d_->modulus == b.d_->modulus;
}

// ---------------------------------------------------------------------------
// FieldElement

void FieldElement::require_same_field(const FieldElement& y) const {
  if (params_.d_ != y.params_.d_ && !(params_ == y.params_)) {
    throw Error(Errc::MismatchedField, "operands belong to different fields");
  }
}

bool FieldElement::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const mpz_class& v) { return v == 0; });
}

bool FieldElement::is_one() const {
  if (c_[0] != 1) return false;
  return std::all_of(c_.begin() + 1, c_.end(), [](const mpz_class& v) { return v == 0; });
}

mpz_class FieldElement::to_integer() const {
  mpz_class acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * params_.d_->p + c_[i];
  return acc;
}

std::vector<std::uint8_t> FieldElement::to_bytes() const {
  const std::size_t w = params_.d_->rbytes;
  std::vector<std::uint8_t> out(w * c_.size(), 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    std::size_t count = (mpz_sizeinbase(c_[i].get_mpz_t(), 2) + 7) / 8;
    if (c_[i] == 0) continue;
    mpz_export(out.data() + i * w + (w - count), nullptr, 1, 1, 1, 0, c_[i].get_mpz_t());
  }
  return out;
}

std::string FieldElement::to_hex() const {
  static constexpr char digits[] = "0123456789abcdef";
  std::string s;
  for (std::uint8_t b : to_bytes()) {
    s.push_back(digits[b >> 4]);
    s.push_back(digits[b & 0xf]);
  }
  return s;
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  for (auto& v : r.c_) {
    if (v != 0) v = params_.d_->p - v;
  }
  return r;
}

FieldElement& FieldElement::operator+=(const FieldElement& y) {
  require_same_field(y);
  const mpz_class& p = params_.d_->p;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    c_[i] += y.c_[i];
    if (c_[i] >= p) c_[i] -= p;
  }
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& y) {
  require_same_field(y);
  const mpz_class& p = params_.d_->p;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    c_[i] -= y.c_[i];
    if (c_[i] < 0) c_[i] += p;
  }
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& y) {
  require_same_field(y);
  const auto& d = *params_.d_;
  if (d.n == 1) {
    mpz_mul(c_[0].get_mpz_t(), c_[0].get_mpz_t(), y.c_[0].get_mpz_t());
    mpz_mod(c_[0].get_mpz_t(), c_[0].get_mpz_t(), d.p.get_mpz_t());
    return *this;
  }
  const std::size_t n = d.n;
  std::vector<mpz_class> prod(2 * n - 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) prod[i + j] += c_[i] * y.c_[j];
  }
  for (auto& v : prod) mpz_mod(v.get_mpz_t(), v.get_mpz_t(), d.p.get_mpz_t());
  // Reduce by the monic modulus from the top down.
  for (std::size_t k = 2 * n - 1; k-- > n;) {
    if (prod[k] == 0) continue;
    const mpz_class lead = prod[k];
    for (std::size_t i = 0; i < n; ++i) {
      prod[k - n + i] -= lead * d.modulus[i];
      mpz_mod(prod[k - n + i].get_mpz_t(), prod[k - n + i].get_mpz_t(), d.p.get_mpz_t());
    }
    prod[k] = 0;
  }
  prod.resize(n);
  c_ = std::move(prod);
  return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& y) { return *this *= inv(y); }

bool operator==(const FieldElement& x, const FieldElement& y) {
  if (!(x.params_ == y.params_)) return false;
  return x.c_ == y.c_;
}

std::strong_ordering operator<=>(const FieldElement& x, const FieldElement& y) {
  const std::size_t n = std::min(x.c_.size(), y.c_.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = cmp(x.c_[i], y.c_[i]);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return x.c_.size() <=> y.c_.size();
}

// ---------------------------------------------------------------------------
// inversion, powers, roots

FieldElement inv(const FieldElement& x) {
  if (x.is_zero()) throw Error(Errc::NonInvertible, "zero has no inverse");
  const auto& d = *x.params_.d_;
  if (d.n == 1) {
    mpz_class r;
    mpz_invert(r.get_mpz_t(), x.c_[0].get_mpz_t(), d.p.get_mpz_t());
    return FieldElement(x.params_, {r});
  }
  return pow(x, d.q - 2);
}

FieldElement pow(const FieldElement& x, const mpz_class& e) {
  if (e < 0) throw Error(Errc::InvalidArgument, "negative exponent");
  const auto& d = *x.params_.d_;
  if (d.n == 1) {
    mpz_class r;
    mpz_powm(r.get_mpz_t(), x.c_[0].get_mpz_t(), e.get_mpz_t(), d.p.get_mpz_t());
    return FieldElement(x.params_, {r});
  }
  FieldElement r = x.params_.one();
  for (std::size_t bit = mpz_sizeinbase(e.get_mpz_t(), 2); bit-- > 0;) {
    r *= r;
    if (mpz_tstbit(e.get_mpz_t(), bit)) r *= x;
  }
  return r;
}

std::optional<FieldElement> sqrt(const FieldElement& x) {
  if (x.is_zero()) return x;
  const auto& d = *x.params_.d_;
  if (d.p == 2) {
    // Squaring is the Frobenius automorphism; its inverse is x^(q/2).
    return pow(x, d.q / 2);
  }
  const FieldElement one = x.params_.one();
  if (pow(x, (d.q - 1) / 2) != one) return std::nullopt;

  FieldElement r = x;
  if (d.two_adicity == 1) {
    r = pow(x, (d.q + 1) / 4);
  } else {
    FieldElement c = pow(FieldElement(x.params_, d.nonresidue), d.odd_part);
    FieldElement t = pow(x, d.odd_part);
    r = pow(x, (d.odd_part + 1) / 2);
    unsigned long m = d.two_adicity;
    while (!t.is_one()) {
      unsigned long i = 0;
      FieldElement t2 = t;
      while (!t2.is_one()) {
        t2 *= t2;
        ++i;
        if (i == m) throw Error(Errc::InternalError, "Tonelli-Shanks failed to converge");
      }
      FieldElement b = c;
      for (unsigned long k = 0; k + i + 1 < m; ++k) b *= b;
      m = i;
      c = b * b;
      t *= c;
      r *= b;
    }
  }
  FieldElement neg = -r;
  return neg < r ? neg : r;
}

mpz_class random_below(const mpz_class& bound, Rng& rng) {
  if (bound <= 0) throw Error(Errc::InvalidArgument, "random_below needs a positive bound");
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  const std::size_t words = (bits + 63) / 64;
  std::vector<std::uint64_t> buf(words);
  mpz_class v;
  for (;;) {
    for (auto& w : buf) w = rng();
    mpz_import(v.get_mpz_t(), words, 1, sizeof(std::uint64_t), 0, 0, buf.data());
    mpz_fdiv_r_2exp(v.get_mpz_t(), v.get_mpz_t(), bits);
    if (v < bound) return v;
  }
}

std::uint64_t random_below(std::uint64_t bound, Rng& rng) {
  if (bound == 0) throw Error(Errc::InvalidArgument, "random_below needs a positive bound");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    std::uint64_t v = rng();
    if (v < limit) return v % bound;
  }
}

FieldElement random_element(const FieldParams& params, Rng& rng) {
  std::vector<mpz_class> c(params.degree());
  for (auto& v : c) v = random_below(params.characteristic(), rng);
  return params.from_coeffs(std::move(c));
}

FieldElement random_nonzero(const FieldParams& params, Rng& rng) {
  for (;;) {
    FieldElement v = random_element(params, rng);
    if (!v.is_zero()) return v;
  }
}

}  // namespace ibc
