#include "ibc/cr_scheme.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>

#include "ibc/codec.hpp"
#include "ibc/error.hpp"

namespace ibc {

namespace {

constexpr int kPointAttempts = 1024;

struct Quadruple {
  FieldElement z1, z2, z3, z4;
};

// Distinct z1, z2, z3 whose solve_fourth denominator is nonzero, plus z4.
Quadruple sample_quadruple(const FieldParams& F, const FieldElement& I, Rng& rng) {
  for (;;) {
    FieldElement z1 = random_element(F, rng);
    FieldElement z2 = random_element(F, rng);
    FieldElement z3 = random_element(F, rng);
    if (z1 == z2 || z1 == z3 || z2 == z3) continue;
    if (((z1 - z3) - I * (z2 - z3)).is_zero()) continue;
    FieldElement z4 = solve_fourth(z1, z2, z3, I);
    return {std::move(z1), std::move(z2), std::move(z3), std::move(z4)};
  }
}

std::optional<std::array<FieldElement, 3>> mask_triple(const MobiusMap& f, const Quadruple& q) {
  const ProjPoint w1 = apply_mask(f, q.z1), w2 = apply_mask(f, q.z2), w3 = apply_mask(f, q.z3);
  if (w1.is_infinity() || w2.is_infinity() || w3.is_infinity()) return std::nullopt;
  return std::array<FieldElement, 3>{w1.value(), w2.value(), w3.value()};
}

}  // namespace

CrGeneration cr_alice_generate(const FieldParams& params, const SharedSecret& S, const Nonce& z, bool use_mask,
                               bool use_check, Rng& rng) {
  if (params.order() < 7) throw Error(Errc::InvalidArgument, "cross-ratio scheme needs a field of order >= 7");
  const FieldElement I = derive_invariant(S, z, params);
  const std::optional<MobiusMap> mask = use_mask ? std::optional(derive_mask(S, z, params)) : std::nullopt;

  for (int attempt = 0; attempt < kPointAttempts; ++attempt) {
    Quadruple q = sample_quadruple(params, I, rng);
    std::array<FieldElement, 3> sent{q.z1, q.z2, q.z3};
    if (mask) {
      auto masked = mask_triple(*mask, q);
      if (!masked) continue;
      sent = std::move(*masked);
    }
    CrMessage msg{sent[0], sent[1], sent[2], z, std::nullopt};
    if (use_check) msg.h_check = integrity_tag(TagKind::Check, S, z, sent);
    return {std::move(msg), std::move(q.z4)};
  }
  throw Error(Errc::SamplingFailure, "no masked triple avoided infinity");
}

FieldElement cr_bob_recover(const SharedSecret& S, const CrMessage& msg, bool use_mask) {
  const FieldParams& params = msg.m1.params();
  const std::array<FieldElement, 3> received{msg.m1, msg.m2, msg.m3};
  if (msg.h_check && integrity_tag(TagKind::Check, S, msg.z, received) != *msg.h_check) {
    throw Error(Errc::IntegrityFailure, "H_check mismatch");
  }
  std::array<FieldElement, 3> pts = received;
  if (use_mask) {
    const MobiusMap f = derive_mask(S, msg.z, params);
    for (auto& p : pts) {
      const ProjPoint u = invert_mask(f, p);
      if (u.is_infinity()) throw Error(Errc::DegenerateDenominator, "masked point unmasks to infinity");
      p = u.value();
    }
  }
  const FieldElement I = derive_invariant(S, msg.z, params);
  try {
    return solve_fourth(pts[0], pts[1], pts[2], I);
  } catch (const Error& e) {
    if (e.code() == Errc::DistinctnessViolation) throw Error(Errc::DegenerateDenominator, e.what());
    throw;
  }
}

// ---------------------------------------------------------------------------
// experiment

ChiSquareResult chi_square_homogeneity(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  if (a.size() != b.size()) throw Error(Errc::InvalidArgument, "histograms differ in size");
  double na = 0, nb = 0;
  for (auto v : a) na += static_cast<double>(v);
  for (auto v : b) nb += static_cast<double>(v);
  ChiSquareResult r;
  if (na == 0 || nb == 0) return r;
  const double ka = std::sqrt(nb / na), kb = std::sqrt(na / nb);
  int used = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double ra = static_cast<double>(a[i]), rb = static_cast<double>(b[i]);
    if (ra + rb == 0) continue;
    const double diff = ka * ra - kb * rb;
    r.chi2 += diff * diff / (ra + rb);
    ++used;
  }
  r.dof = used - 1;
  if (r.dof > 0) {
    boost::math::chi_squared_distribution<double> dist(r.dof);
    r.p_value = boost::math::cdf(boost::math::complement(dist, r.chi2));
  }
  return r;
}

bool ExperimentReport::masked_indistinguishable(double alpha) const {
  return std::all_of(coordinates.begin(), coordinates.end(), [alpha](const auto& c) { return c.p_value > alpha; });
}

bool ExperimentReport::control_distinguished(double alpha) const {
  return control_distinct_fixed == 1 && control_distinct_random > 1 && control.p_value < alpha;
}

nlohmann::json ExperimentReport::to_json() const {
  auto stat = [](const ChiSquareResult& c) { return nlohmann::json{{"chi2", c.chi2}, {"dof", c.dof}, {"p_value", c.p_value}}; };
  nlohmann::json coords = nlohmann::json::array();
  for (std::size_t i = 0; i < coordinates.size(); ++i) {
    auto j = stat(coordinates[i]);
    j["coordinate"] = "m" + std::to_string(i + 1);
    coords.push_back(std::move(j));
  }
  auto ctrl = stat(control);
  ctrl["distinct_cr_fixed"] = control_distinct_fixed;
  ctrl["distinct_cr_random"] = control_distinct_random;
  return {{"p", p}, {"N", sessions}, {"seed", seed}, {"bins", bins}, {"coordinates", coords}, {"unmasked_control", ctrl}};
}

ExperimentReport indistinguishability_experiment(std::uint64_t p, std::size_t sessions, std::uint64_t seed) {
  if (p > (1u << 16)) throw Error(Errc::InvalidArgument, "experiment is desk scale: p <= 2^16");
  if (sessions < 1000) throw Error(Errc::InvalidArgument, "experiment needs N >= 1000");
  const FieldParams F = FieldParams::prime(mpz_class(static_cast<unsigned long>(p)));
  Rng rng(seed);
  const std::size_t bins = std::min<std::uint64_t>(p, 64);
  auto bucket = [&](const FieldElement& v) { return v.to_integer().get_ui() * bins / p; };

  struct Arm {
    std::array<std::vector<std::uint64_t>, 3> masked;
    std::vector<std::uint64_t> cr;
    std::set<FieldElement> distinct_cr;
  };
  auto run_arm = [&](const std::optional<FieldElement>& fixed_I) {
    Arm arm;
    for (auto& h : arm.masked) h.assign(bins, 0);
    arm.cr.assign(bins, 0);
    for (std::size_t s = 0; s < sessions; ++s) {
      const FieldElement I = fixed_I ? *fixed_I : random_nonzero(F, rng);
      for (;;) {
        const Quadruple q = sample_quadruple(F, I, rng);
        const MobiusMap f = random_mobius(F, rng);
        auto masked = mask_triple(f, q);
        if (!masked) continue;
        for (std::size_t i = 0; i < 3; ++i) ++arm.masked[i][bucket((*masked)[i])];
        FieldElement cr = cross_ratio(q.z1, q.z2, q.z3, q.z4);
        ++arm.cr[bucket(cr)];
        arm.distinct_cr.insert(std::move(cr));
        break;
      }
    }
    return arm;
  };

  const Arm fixed = run_arm(random_nonzero(F, rng));
  const Arm random = run_arm(std::nullopt);

  ExperimentReport report;
  report.p = p;
  report.sessions = sessions;
  report.seed = seed;
  report.bins = bins;
  for (std::size_t i = 0; i < 3; ++i) report.coordinates[i] = chi_square_homogeneity(fixed.masked[i], random.masked[i]);
  report.control = chi_square_homogeneity(fixed.cr, random.cr);
  report.control_distinct_fixed = fixed.distinct_cr.size();
  report.control_distinct_random = random.distinct_cr.size();
  return report;
}

}  // namespace ibc
