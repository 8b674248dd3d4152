#pragma once

#include <span>

#include <nlohmann/json.hpp>

#include "ibc/bytes.hpp"
#include "ibc/field.hpp"
#include "ibc/messages.hpp"

namespace ibc {

// ---------------------------------------------------------------------------
// Commitment to a hidden object
//
// v = hash_to_field("IBC/commit", object) is embedded as the hidden offset of a
// discriminant exchange with H_auth. The exchange nonce is a keyed digest of
// (S, object), so opening with a different object fails even when the two
// objects collide in a small field. Opening = revealing the object.

struct Commitment {
  DiscMessage encoding;
  Nonce context;
};

Commitment commit(const FieldParams& params, const SharedSecret& S, std::span<const std::uint8_t> object, Rng& rng);
// Never throws on protocol failures; any of them yields false.
bool verify_commitment(const FieldParams& params, const SharedSecret& S, std::span<const std::uint8_t> object,
                       const Commitment& c);

// ---------------------------------------------------------------------------
// Challenge-response over the cross-ratio scheme
//
// The verifier sends a masked triple with z4 withheld; the prover answers with
// H_auth(S, z, z4), which reveals neither S nor z4.

struct ChallengeSecret {
  FieldElement z4;
  IntegrityTag expected;
};

struct IssuedChallenge {
  CrMessage challenge;
  ChallengeSecret secret;
};

IssuedChallenge cr_challenge(const FieldParams& params, const SharedSecret& S, Rng& rng);
// Propagates IntegrityFailure from the cross-ratio recovery.
IntegrityTag cr_respond(const SharedSecret& S, const CrMessage& challenge);
bool cr_check(const ChallengeSecret& expected, const IntegrityTag& response);

// ---------------------------------------------------------------------------
// Constraint-embedded puzzles: find z3, z4 with CR(z1, z2; z3, z4) = I and
// z3^z4 = k, the exponent being z4's integer lift in [0, q).

struct Puzzle {
  FieldElement z1, z2, I, k;
  friend bool operator==(const Puzzle&, const Puzzle&) = default;
};

struct PuzzleWitness {
  FieldElement z3, z4;
  friend bool operator==(const PuzzleWitness&, const PuzzleWitness&) = default;
};

struct GeneratedPuzzle {
  Puzzle puzzle;
  PuzzleWitness witness;
};

GeneratedPuzzle puzzle_make(const FieldParams& params, Rng& rng);
bool puzzle_verify(const Puzzle& puzzle, const PuzzleWitness& witness);
/// Scans z3 in ascending index order, derives the unique z4 per z3 and returns
/// the first pair meeting the exponent constraint. Field order <= 2^20.
/// Throws Errc::NoSolution after a full scan.
PuzzleWitness puzzle_solve(const Puzzle& puzzle);

nlohmann::json to_json(const Puzzle& puzzle);
nlohmann::json to_json(const PuzzleWitness& witness);
Puzzle puzzle_from_json(const nlohmann::json& j, const FieldParams& params);
PuzzleWitness witness_from_json(const nlohmann::json& j, const FieldParams& params);

}  // namespace ibc
