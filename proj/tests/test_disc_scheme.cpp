#include <gtest/gtest.h>

#include <array>
#include <functional>
#include <set>

#include "ibc/codec.hpp"
#include "ibc/disc_scheme.hpp"
#include "ibc/error.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace ibc;
using support::u;

namespace {

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::InternalError;
}

// A message over arbitrary (a2, a3, D, y) carrying a valid H_check.
DiscMessage signed_message(const SharedSecret& S, const Nonce& z, const FieldElement& a2, const FieldElement& a3,
                           const FieldElement& D, const FieldElement& y) {
  const std::array<FieldElement, 4> parts{a2, a3, D, y};
  return {a2, a3, D, y, z, integrity_tag(TagKind::Check, S, z, parts), std::nullopt};
}

std::set<std::uint64_t> oracle_union(std::uint64_t a2, std::uint64_t a3, std::uint64_t D, std::uint64_t t,
                                     std::uint64_t y, std::uint64_t p) {
  std::set<std::uint64_t> out;
  for (auto a1 : oracle::solve_a1(a2, a3, D, p)) {
    for (auto h : oracle::solve_shift(a1, a2, a3, t, y, p)) out.insert(h);
  }
  return out;
}

}  // namespace

TEST(DiscScheme, HandBuiltCandidateUnion) {
  const auto F = FieldParams::prime(13);
  Rng rng(1);
  const auto hs = candidate_offsets(F.from_uint(2), F.from_uint(3), F.from_uint(4), F.from_uint(5), F.from_uint(2), rng);
  EXPECT_EQ(u(hs), (std::vector<std::uint64_t>{3, 4, 7, 8}));
  const auto expect = oracle_union(2, 3, 4, 5, 2, 13);
  EXPECT_EQ(support::u_set(hs), expect);
}

TEST(DiscScheme, CandidateUnionMatchesOracle) {
  const std::uint64_t p = 31;
  const auto F = FieldParams::prime(p);
  Rng rng(2);
  std::mt19937_64 gen(2);
  int compared = 0;
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t a2 = gen() % p, a3 = gen() % p, D = 1 + gen() % (p - 1), t = gen() % p, y = gen() % p;
    if (a2 == a3) continue;
    const auto expect = oracle_union(a2, a3, D, t, y, p);
    if (oracle::solve_a1(a2, a3, D, p).empty()) {
      ASSERT_EQ(code_of([&] { candidate_offsets(F.from_uint(a2), F.from_uint(a3), F.from_uint(D), F.from_uint(t),
                                                F.from_uint(y), rng); }),
                Errc::NoCandidateRoot);
    } else if (expect.empty()) {
      ASSERT_EQ(code_of([&] { candidate_offsets(F.from_uint(a2), F.from_uint(a3), F.from_uint(D), F.from_uint(t),
                                                F.from_uint(y), rng); }),
                Errc::NoShiftSolution);
    } else {
      const auto got = u(candidate_offsets(F.from_uint(a2), F.from_uint(a3), F.from_uint(D), F.from_uint(t),
                                           F.from_uint(y), rng));
      ASSERT_EQ(std::set<std::uint64_t>(got.begin(), got.end()), expect);
      ++compared;
    }
  }
  EXPECT_GT(compared, 100);
}

TEST(DiscScheme, RoundTripWithAuth) {
  for (const auto& F : {FieldParams::prime(13), FieldParams::prime(10007), support::f243(), support::p256()}) {
    Rng rng(5);
    for (int i = 0; i < 30; ++i) {
      const SharedSecret S = support::random_secret(rng);
      const Nonce z = support::random_nonce(rng);
      const DiscGeneration gen = alice_generate(F, S, z, true, rng);
      ASSERT_FALSE(gen.message.D.is_zero());
      ASSERT_TRUE(gen.message.h_auth.has_value());
      const auto got = bob_recover(S, gen.message, rng);
      ASSERT_EQ(got.size(), 1u);
      ASSERT_EQ(got.front(), gen.h);
    }
  }
}

TEST(DiscScheme, WithoutAuthTheSecretIsAmongCandidates) {
  const auto F = FieldParams::prime(13);
  Rng rng(6);
  for (int i = 0; i < 200; ++i) {
    const SharedSecret S = support::random_secret(rng);
    const Nonce z = support::random_nonce(rng);
    const DiscGeneration gen = alice_generate(F, S, z, false, rng);
    const auto got = bob_recover(S, gen.message, rng);
    ASSERT_NE(std::find(got.begin(), got.end(), gen.h), got.end());
    ASSERT_LE(got.size(), 12u);
    const auto t = u(derive_t(S, z, F));
    const auto expect = oracle_union(u(gen.message.a2), u(gen.message.a3), u(gen.message.D), t, u(gen.message.y), 13);
    ASSERT_EQ(support::u_set(got), expect);
  }
}

TEST(DiscScheme, AliceIsDeterministicForFixedSeed) {
  const auto F = support::p256();
  Rng seed_rng(7);
  const SharedSecret S = support::random_secret(seed_rng);
  const Nonce z = support::random_nonce(seed_rng);
  Rng a(42), b(42);
  EXPECT_EQ(alice_generate(F, S, z, true, a).message, alice_generate(F, S, z, true, b).message);
}

TEST(DiscScheme, TamperedFieldsFailIntegrity) {
  const auto F = FieldParams::prime(10007);
  Rng rng(8);
  const SharedSecret S = support::random_secret(rng);
  const DiscGeneration gen = alice_generate(F, S, support::random_nonce(rng), true, rng);
  const FieldElement one = F.one();
  std::vector<std::function<void(DiscMessage&)>> edits{
      [&](DiscMessage& m) { m.a2 += one; },
      [&](DiscMessage& m) { m.a3 += one; },
      [&](DiscMessage& m) { m.D += one; },
      [&](DiscMessage& m) { m.y += one; },
      [&](DiscMessage& m) { m.z.bytes[0] ^= 1; },
      [&](DiscMessage& m) { m.h_check.bytes[31] ^= 0x80; },
      [&](DiscMessage& m) { m.h_auth->bytes[5] ^= 4; },
  };
  for (const auto& edit : edits) {
    DiscMessage m = gen.message;
    edit(m);
    EXPECT_EQ(code_of([&] { bob_recover(S, m, rng); }), Errc::IntegrityFailure);
  }
  SharedSecret wrong = S;
  wrong.bytes[0] ^= 1;
  EXPECT_EQ(code_of([&] { bob_recover(wrong, gen.message, rng); }), Errc::IntegrityFailure);
}

TEST(DiscScheme, AuthenticatedDegenerateInputs) {
  const auto F = FieldParams::prime(13);
  Rng rng(9);
  const SharedSecret S = support::random_secret(rng);
  const Nonce z = support::random_nonce(rng);
  const auto e = [&](std::uint64_t v) { return F.from_uint(v); };

  EXPECT_EQ(code_of([&] { bob_recover(S, signed_message(S, z, e(2), e(2), e(4), e(1)), rng); }), Errc::NoCandidateRoot);
  EXPECT_EQ(code_of([&] { bob_recover(S, signed_message(S, z, e(2), e(3), e(0), e(1)), rng); }), Errc::NoCandidateRoot);
  // D / (a2 - a3)^2 = 2 is a non-residue mod 13.
  EXPECT_EQ(code_of([&] { bob_recover(S, signed_message(S, z, e(2), e(3), e(2), e(1)), rng); }), Errc::NoCandidateRoot);

  const std::uint64_t t = u(derive_t(S, z, F));
  std::uint64_t unreachable = 13;
  for (std::uint64_t y = 0; y < 13 && unreachable == 13; ++y) {
    if (oracle_union(2, 3, 4, t, y, 13).empty()) unreachable = y;
  }
  ASSERT_LT(unreachable, 13u);
  EXPECT_EQ(code_of([&] { bob_recover(S, signed_message(S, z, e(2), e(3), e(4), e(unreachable)), rng); }),
            Errc::NoShiftSolution);
}

TEST(DiscScheme, RecoveredCandidatesAllReproduceTheTransmittedValue) {
  const auto F = support::p256();
  Rng rng(10);
  for (int i = 0; i < 10; ++i) {
    const SharedSecret S = support::random_secret(rng);
    const Nonce z = support::random_nonce(rng);
    const DiscGeneration gen = alice_generate(F, S, z, false, rng);
    const auto got = bob_recover(S, gen.message, rng);
    ASSERT_NE(std::find(got.begin(), got.end(), gen.h), got.end());
  }
}
