#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "ibc/bytes.hpp"
#include "ibc/field.hpp"
#include "ibc/messages.hpp"
#include "ibc/projective.hpp"

namespace ibc {

struct CrGeneration {
  CrMessage message;
  FieldElement z4;
};

/// Alice: I = derive_invariant(S, z); distinct z1, z2, z3 with a nonvanishing
/// solve_fourth denominator; z4 from the cross-ratio equation. With `use_mask`
/// the triple goes out through derive_mask(S, z), redrawn if any image is
/// infinity. `use_check` attaches H_check over the transmitted triple.
CrGeneration cr_alice_generate(const FieldParams& params, const SharedSecret& S, const Nonce& z, bool use_mask,
                               bool use_check, Rng& rng);

/// Bob: verifies H_check when present, unmasks, returns z4. A triple that
/// unmasks to infinity or to coincident points is reported as
/// Errc::DegenerateDenominator.
FieldElement cr_bob_recover(const SharedSecret& S, const CrMessage& msg, bool use_mask);

// ---------------------------------------------------------------------------
// Masked-triple indistinguishability, desk scale

struct ChiSquareResult {
  double chi2 = 0;
  int dof = 0;
  double p_value = 1;
};

// Two-sample chi-square homogeneity test over matching histograms; bins empty
// in both samples are dropped from the degrees of freedom.
ChiSquareResult chi_square_homogeneity(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);

struct ExperimentReport {
  std::uint64_t p = 0;
  std::size_t sessions = 0;
  std::uint64_t seed = 0;
  std::size_t bins = 0;
  // One entry per masked coordinate: fixed-I arm against random-I arm.
  std::array<ChiSquareResult, 3> coordinates;
  // Unmasked control: cross-ratio of each completed quadruple, binned.
  ChiSquareResult control;
  std::size_t control_distinct_fixed = 0;
  std::size_t control_distinct_random = 0;

  bool masked_indistinguishable(double alpha) const;
  bool control_distinguished(double alpha) const;
  nlohmann::json to_json() const;
};

/// N masked sessions with one fixed I against N with a fresh I per session.
/// Masks are uniform draws from PGL_2(F_p), not hash-derived. Each masked
/// coordinate is binned into min(p, 64) buckets. Requires p <= 2^16 and N >= 1000.
ExperimentReport indistinguishability_experiment(std::uint64_t p, std::size_t sessions, std::uint64_t seed);

}  // namespace ibc
