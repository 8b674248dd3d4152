#include "ibc/applications.hpp"

#include <array>

#include "ibc/codec.hpp"
#include "ibc/cr_scheme.hpp"
#include "ibc/disc_scheme.hpp"
#include "ibc/error.hpp"
#include "ibc/projective.hpp"

namespace ibc {

namespace {

FieldElement commit_value(const FieldParams& params, std::span<const std::uint8_t> object) {
  return hash_to_field(tags::kCommit, {Bytes(object.begin(), object.end())}, params, Constraint::Any);
}

Nonce commit_context(const SharedSecret& S, std::span<const std::uint8_t> object) {
  return Nonce{tagged_digest(tags::kCommitContext, {Bytes(S.bytes.begin(), S.bytes.end()), Bytes(object.begin(), object.end())})};
}

Nonce random_nonce(Rng& rng) {
  Nonce z;
  for (std::size_t i = 0; i < z.bytes.size(); i += 8) {
    std::uint64_t w = rng();
    for (std::size_t j = 0; j < 8; ++j) z.bytes[i + j] = static_cast<std::uint8_t>(w >> (56 - 8 * j));
  }
  return z;
}

constexpr unsigned long kMaxPuzzleOrder = 1ul << 20;

}  // namespace

Commitment commit(const FieldParams& params, const SharedSecret& S, std::span<const std::uint8_t> object, Rng& rng) {
  const Nonce context = commit_context(S, object);
  DiscGeneration gen = alice_generate_with_offset(params, S, context, commit_value(params, object), true, rng);
  return {std::move(gen.message), context};
}

bool verify_commitment(const FieldParams& params, const SharedSecret& S, std::span<const std::uint8_t> object,
                       const Commitment& c) {
  const Nonce context = commit_context(S, object);
  if (context != c.context || c.encoding.z != context || !c.encoding.h_auth) return false;
  if (!(c.encoding.a2.params() == params)) return false;
  try {
    Rng rng(0);
    const auto recovered = bob_recover(S, c.encoding, rng);
    return recovered.size() == 1 && recovered.front() == commit_value(params, object);
  } catch (const Error&) {
    return false;
  }
}

IssuedChallenge cr_challenge(const FieldParams& params, const SharedSecret& S, Rng& rng) {
  const Nonce z = random_nonce(rng);
  CrGeneration gen = cr_alice_generate(params, S, z, true, true, rng);
  const std::array<FieldElement, 1> hidden{gen.z4};
  IntegrityTag expected = integrity_tag(TagKind::Auth, S, z, hidden);
  return {std::move(gen.message), {std::move(gen.z4), expected}};
}

IntegrityTag cr_respond(const SharedSecret& S, const CrMessage& challenge) {
  const std::array<FieldElement, 1> hidden{cr_bob_recover(S, challenge, true)};
  return integrity_tag(TagKind::Auth, S, challenge.z, hidden);
}

bool cr_check(const ChallengeSecret& expected, const IntegrityTag& response) {
  // Accumulate over every byte rather than stopping at the first difference.
  std::uint8_t diff = 0;
  for (std::size_t i = 0; i < response.bytes.size(); ++i) diff |= expected.expected.bytes[i] ^ response.bytes[i];
  return diff == 0;
}

GeneratedPuzzle puzzle_make(const FieldParams& params, Rng& rng) {
  for (;;) {
    FieldElement z1 = random_element(params, rng);
    FieldElement z2 = random_element(params, rng);
    if (z1 == z2) continue;
    FieldElement I = random_nonzero(params, rng);
    FieldElement z3 = random_element(params, rng);
    if (z3 == z1 || z3 == z2) continue;
    if (((z1 - z3) - I * (z2 - z3)).is_zero()) continue;
    FieldElement z4 = solve_fourth(z1, z2, z3, I);
    FieldElement k = pow(z3, z4.to_integer());
    return {{std::move(z1), std::move(z2), std::move(I), std::move(k)}, {std::move(z3), std::move(z4)}};
  }
}

bool puzzle_verify(const Puzzle& puzzle, const PuzzleWitness& witness) {
  try {
    if (cross_ratio(puzzle.z1, puzzle.z2, witness.z3, witness.z4) != puzzle.I) return false;
  } catch (const Error&) {
    return false;
  }
  return pow(witness.z3, witness.z4.to_integer()) == puzzle.k;
}

PuzzleWitness puzzle_solve(const Puzzle& puzzle) {
  const FieldParams& F = puzzle.z1.params();
  if (F.order() > kMaxPuzzleOrder) throw Error(Errc::InvalidArgument, "puzzle_solve is limited to fields of order <= 2^20");
  if (puzzle.z1 == puzzle.z2 || puzzle.I.is_zero()) throw Error(Errc::InvalidArgument, "malformed puzzle");
  const unsigned long q = F.order().get_ui();
  for (unsigned long i = 0; i < q; ++i) {
    FieldElement z3 = F.from_index(i);
    if (z3 == puzzle.z1 || z3 == puzzle.z2) continue;
    const FieldElement den = (puzzle.z1 - z3) - puzzle.I * (puzzle.z2 - z3);
    if (den.is_zero()) continue;
    FieldElement z4 = solve_fourth(puzzle.z1, puzzle.z2, z3, puzzle.I);
    if (pow(z3, z4.to_integer()) == puzzle.k) return {std::move(z3), std::move(z4)};
  }
  throw Error(Errc::NoSolution, "no z3 satisfies the exponent constraint");
}

namespace {

std::string element_hex(const FieldElement& v) { return v.to_hex(); }

FieldElement element_from(const nlohmann::json& j, const char* key, const FieldParams& params) {
  if (!j.contains(key) || !j.at(key).is_string()) throw Error(Errc::Malformed, std::string("missing field ") + key);
  return params.decode(from_hex(j.at(key).get<std::string>()));
}

}  // namespace

nlohmann::json to_json(const Puzzle& puzzle) {
  return {{"z1", element_hex(puzzle.z1)}, {"z2", element_hex(puzzle.z2)}, {"I", element_hex(puzzle.I)},
          {"k", element_hex(puzzle.k)}};
}

nlohmann::json to_json(const PuzzleWitness& witness) {
  return {{"z3", element_hex(witness.z3)}, {"z4", element_hex(witness.z4)}};
}

Puzzle puzzle_from_json(const nlohmann::json& j, const FieldParams& params) {
  return {element_from(j, "z1", params), element_from(j, "z2", params), element_from(j, "I", params),
          element_from(j, "k", params)};
}

PuzzleWitness witness_from_json(const nlohmann::json& j, const FieldParams& params) {
  return {element_from(j, "z3", params), element_from(j, "z4", params)};
}

}  // namespace ibc
