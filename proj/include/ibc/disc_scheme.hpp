#pragma once

#include <vector>

#include "ibc/bytes.hpp"
#include "ibc/field.hpp"
#include "ibc/messages.hpp"

namespace ibc {

/// Alice's output. `h` and `a1` are her secrets; they are returned so callers
/// and tests can check recovery, and a deployment simply drops them.
struct DiscGeneration {
  DiscMessage message;
  FieldElement h;
  FieldElement a1;
};

// Draws h and three distinct roots, sends <a2, a3, D, y = P(t + h), z, H_check [, H_auth]>.
DiscGeneration alice_generate(const FieldParams& params, const SharedSecret& S, const Nonce& z, bool with_auth, Rng& rng);
// Same, with the hidden offset supplied by the caller (commitments embed H(object)).
DiscGeneration alice_generate_with_offset(const FieldParams& params, const SharedSecret& S, const Nonce& z,
                                          const FieldElement& h, bool with_auth, Rng& rng);

/// Union over every a1 consistent with (a2, a3, D) of {h : P(t + h) = y}.
/// Throws Errc::NoCandidateRoot when no a1 exists and Errc::NoShiftSolution when
/// no candidate polynomial reaches y.
std::vector<FieldElement> candidate_offsets(const FieldElement& a2, const FieldElement& a3, const FieldElement& D,
                                             const FieldElement& t, const FieldElement& y, Rng& rng);

/// Bob's side. Verifies H_check (Errc::IntegrityFailure), then returns every
/// acceptable h. With H_auth present the result is exactly one value: an auth
/// tag matching no candidate is an IntegrityFailure and one matching several is
/// Errc::AmbiguousAuth.
std::vector<FieldElement> bob_recover(const SharedSecret& S, const DiscMessage& msg, Rng& rng);

}  // namespace ibc
