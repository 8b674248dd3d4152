#include <gtest/gtest.h>

#include <array>
#include <functional>
#include <set>

#include "ibc/codec.hpp"
#include "ibc/error.hpp"
#include "ibc/poly.hpp"
#include "ibc/session.hpp"
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

struct Pair {
  SessionState alice, bob;
};

Pair open_pair(const FieldParams& F, SessionMode mode, Rng& rng) {
  const SharedSecret S = support::random_secret(rng);
  const Nonce z = support::random_nonce(rng);
  return {SessionState::open(F, S, z, mode), SessionState::open(F, S, z, mode)};
}

// Shared-root pair past initialisation.
Pair established_pair(const FieldParams& F, Rng& rng) {
  Pair p = open_pair(F, SessionMode::SharedRoot, rng);
  const InitSend init = shared_root_init_send(p.alice, rng);
  shared_root_init_receive(p.bob, init.message, rng);
  return p;
}

}  // namespace

TEST(Session, OpenDerivesStateFromSecretAndNonce) {
  const auto F = support::p256();
  Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    Pair p = open_pair(F, SessionMode::DerivedInvariant, rng);
    ASSERT_EQ(p.alice.t, p.bob.t);
    ASSERT_TRUE(p.alice.D.has_value());
    ASSERT_EQ(*p.alice.D, *p.bob.D);
    ASSERT_EQ(*p.alice.D, derive_session_invariant(p.alice.S, p.alice.z, F));
    ASSERT_TRUE(sqrt(*p.alice.D).has_value());
    ASSERT_FALSE(p.alice.a1.has_value());
  }
  Pair s = open_pair(F, SessionMode::SharedRoot, rng);
  EXPECT_FALSE(s.alice.D.has_value());
  EXPECT_FALSE(s.alice.a1.has_value());
}

TEST(Session, SessionInvariantKeepsFeasibleDerivedValues) {
  const auto F = FieldParams::prime(10007);
  Rng rng(16);
  int kept = 0;
  for (int i = 0; i < 400; ++i) {
    const SharedSecret S = support::random_secret(rng);
    const Nonce z = support::random_nonce(rng);
    const FieldElement raw = derive_invariant(S, z, F);
    const FieldElement D = derive_session_invariant(S, z, F);
    ASSERT_TRUE(sqrt(D).has_value());
    ASSERT_FALSE(D.is_zero());
    if (sqrt(raw)) {
      ASSERT_EQ(D, raw);
      ++kept;
    }
  }
  // Half of the nonzero residues are squares.
  EXPECT_GT(kept, 150);
  EXPECT_LT(kept, 250);
}

TEST(Session, CompleteTripleExample) {
  const auto F = FieldParams::prime(13);
  Rng rng(2);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 100; ++i) {
    const auto triple = complete_triple(F.from_uint(4), F.from_uint(2), F.from_uint(3), rng);
    ASSERT_TRUE(triple.has_value());
    seen.insert(u(triple->a1));
  }
  EXPECT_EQ(seen, (std::set<std::uint64_t>{1, 4}));
  EXPECT_FALSE(complete_triple(F.from_uint(2), F.from_uint(2), F.from_uint(3), rng).has_value());
}

TEST(Session, SamplerSucceedsExactlyOnFeasibleInvariants) {
  const std::uint64_t p = 13;
  const auto F = FieldParams::prime(p);
  const auto squares = oracle::squares(p);
  Rng rng(3);
  for (std::uint64_t D = 1; D < p; ++D) {
    bool feasible = false;
    for (std::uint64_t a2 = 0; a2 < p && !feasible; ++a2)
      for (std::uint64_t a3 = 0; a3 < p && !feasible; ++a3)
        if (a2 != a3 && !oracle::solve_a1(a2, a3, D, p).empty()) feasible = true;
    ASSERT_EQ(feasible, squares.count(D) == 1) << D;
    if (!feasible) {
      ASSERT_EQ(code_of([&] { sample_triple_with_discriminant(F.from_uint(D), rng); }), Errc::SamplingFailure);
      continue;
    }
    for (int i = 0; i < 20; ++i) {
      const RootTriple t = sample_triple_with_discriminant(F.from_uint(D), rng);
      ASSERT_EQ(oracle::disc_from_roots(u(t.a1), u(t.a2), u(t.a3), p), D);
    }
  }
  EXPECT_EQ(code_of([&] { sample_triple_with_discriminant(F.zero(), rng); }), Errc::ZeroDiscriminant);
}

TEST(Session, MinimalModeRoundTrip) {
  for (const auto& F : {FieldParams::prime(13), FieldParams::prime(10007), support::p256()}) {
    Rng rng(4);
    for (int i = 0; i < 50; ++i) {
      Pair p = open_pair(F, SessionMode::DerivedInvariant, rng);
      const MinimalSend sent = minimal_send(p.alice, rng);
      const auto got = minimal_receive(p.bob, sent.message, rng);
      ASSERT_NE(std::find(got.begin(), got.end(), sent.h), got.end());
      ASSERT_EQ(encode_message(sent.message).size(), 8 + 3 * (4 + F.element_bytes()));
    }
  }
}

TEST(Session, MinimalModeReceiverSetMatchesOracle) {
  const std::uint64_t p = 13;
  const auto F = FieldParams::prime(p);
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    Pair s = open_pair(F, SessionMode::DerivedInvariant, rng);
    const MinimalSend sent = minimal_send(s.alice, rng);
    const auto got = minimal_receive(s.bob, sent.message, rng);
    std::set<std::uint64_t> expect;
    const auto& m = sent.message;
    for (auto a1 : oracle::solve_a1(u(m.a2), u(m.a3), u(*s.bob.D), p))
      for (auto h : oracle::solve_shift(a1, u(m.a2), u(m.a3), u(s.bob.t), u(m.y), p)) expect.insert(h);
    ASSERT_EQ(support::u_set(got), expect);
  }
}

TEST(Session, MinimalModeWrongSecret) {
  const auto F = FieldParams::prime(10007);
  Rng rng(6);
  int rejected_or_excluded = 0;
  for (int i = 0; i < 200; ++i) {
    const Nonce z = support::random_nonce(rng);
    SessionState alice = SessionState::open(F, support::random_secret(rng), z, SessionMode::DerivedInvariant);
    SessionState eve = SessionState::open(F, support::random_secret(rng), z, SessionMode::DerivedInvariant);
    const MinimalSend sent = minimal_send(alice, rng);
    try {
      const auto got = minimal_receive(eve, sent.message, rng);
      if (std::find(got.begin(), got.end(), sent.h) == got.end()) ++rejected_or_excluded;
    } catch (const Error& e) {
      ASSERT_TRUE(e.code() == Errc::NoCandidateRoot || e.code() == Errc::NoShiftSolution);
      ++rejected_or_excluded;
    }
  }
  EXPECT_GE(rejected_or_excluded, 195);
}

TEST(Session, SharedRootInitAgreesOnRoot) {
  for (const auto& F : {FieldParams::prime(13), FieldParams::prime(10007), support::p256()}) {
    Rng rng(7);
    for (int i = 0; i < 40; ++i) {
      Pair p = open_pair(F, SessionMode::SharedRoot, rng);
      const InitSend init = shared_root_init_send(p.alice, rng);
      const RootCandidate c = shared_root_init_receive(p.bob, init.message, rng);
      ASSERT_EQ(c.a1, init.a1);
      ASSERT_EQ(*p.alice.a1, *p.bob.a1);
      ASSERT_NE(std::find(c.offsets.begin(), c.offsets.end(), init.h), c.offsets.end());
      ASSERT_EQ(std::get<SharedRootInit>(decode_message(encode_message(init.message), F)), init.message);
    }
  }
}

TEST(Session, ConstructedAmbiguousInit) {
  const std::uint64_t p = 13;
  const auto F = FieldParams::prime(p);
  Rng rng(8);
  // Candidates {1, 4} for (a2, a3, D) = (2, 3, 4); find y reachable from both.
  for (int attempt = 0; attempt < 50; ++attempt) {
    SessionState bob = SessionState::open(F, support::random_secret(rng), support::random_nonce(rng),
                                          SessionMode::SharedRoot);
    const std::uint64_t t = u(bob.t);
    for (std::uint64_t y = 0; y < p; ++y) {
      if (oracle::solve_shift(1, 2, 3, t, y, p).empty() || oracle::solve_shift(4, 2, 3, t, y, p).empty()) continue;
      const SharedRootInit msg{F.from_uint(2), F.from_uint(3), F.from_uint(4), F.from_uint(y)};
      EXPECT_EQ(code_of([&] { shared_root_init_receive(bob, msg, rng); }), Errc::AmbiguousInit);
      EXPECT_FALSE(bob.a1.has_value());
      return;
    }
  }
  FAIL() << "no ambiguous instance found";
}

TEST(Session, SharedRootInitErrors) {
  const auto F = FieldParams::prime(13);
  Rng rng(9);
  SessionState bob = SessionState::open(F, support::random_secret(rng), support::random_nonce(rng), SessionMode::SharedRoot);
  const auto e = [&](std::uint64_t v) { return F.from_uint(v); };
  EXPECT_EQ(code_of([&] { shared_root_init_receive(bob, {e(2), e(2), e(4), e(1)}, rng); }), Errc::NoCandidateRoot);
  EXPECT_EQ(code_of([&] { shared_root_init_receive(bob, {e(2), e(3), e(2), e(1)}, rng); }), Errc::NoCandidateRoot);
  const std::uint64_t t = u(bob.t);
  for (std::uint64_t y = 0; y < 13; ++y) {
    if (oracle::solve_shift(1, 2, 3, t, y, 13).empty() && oracle::solve_shift(4, 2, 3, t, y, 13).empty()) {
      EXPECT_EQ(code_of([&] { shared_root_init_receive(bob, {e(2), e(3), e(4), e(y)}, rng); }), Errc::NoShiftSolution);
      break;
    }
  }
  EXPECT_FALSE(bob.a1.has_value());
}

TEST(Session, SenderAvoidsAmbiguousInitInSmallFields) {
  const auto F = FieldParams::prime(13);
  Rng rng(10);
  for (int i = 0; i < 300; ++i) {
    Pair p = open_pair(F, SessionMode::SharedRoot, rng);
    const InitSend init = shared_root_init_send(p.alice, rng);
    ASSERT_EQ(shared_root_init_receive(p.bob, init.message, rng).a1, init.a1);
  }
}

TEST(Session, StreamValuesAgree) {
  for (const auto& F : {FieldParams::prime(10007), support::p256()}) {
    Rng rng(11);
    Pair p = established_pair(F, rng);
    for (int i = 0; i < 200; ++i) {
      const StreamSend sent = stream_send(p.alice, rng);
      ASSERT_EQ(stream_receive(p.bob, sent.message), sent.y);
      ASSERT_EQ(encode_message(sent.message).size(), 8 + 3 * (4 + F.element_bytes()));
    }
    EXPECT_EQ(p.alice.msg_counter, 201u);
    EXPECT_EQ(p.bob.msg_counter, 201u);
  }
}

TEST(Session, StreamWithWrongRootDiffers) {
  const auto F = FieldParams::prime(10007);
  Rng rng(12);
  Pair p = established_pair(F, rng);
  SessionState skewed = p.bob;
  skewed.a1 = *skewed.a1 + F.one();
  int differ = 0;
  for (int i = 0; i < 200; ++i) {
    const StreamSend sent = stream_send(p.alice, rng);
    if (stream_receive(skewed, sent.message) != sent.y) ++differ;
  }
  EXPECT_GE(differ, 195);
}

TEST(Session, StreamRequiresInitialisationAndMode) {
  const auto F = FieldParams::prime(10007);
  Rng rng(13);
  Pair p = open_pair(F, SessionMode::SharedRoot, rng);
  EXPECT_EQ(code_of([&] { stream_send(p.alice, rng); }), Errc::UninitializedSession);
  EXPECT_EQ(code_of([&] { stream_receive(p.bob, {F.one(), F.zero(), F.one()}); }), Errc::UninitializedSession);
  Pair d = open_pair(F, SessionMode::DerivedInvariant, rng);
  EXPECT_EQ(code_of([&] { shared_root_init_send(d.alice, rng); }), Errc::InvalidArgument);
  EXPECT_EQ(code_of([&] { minimal_send(p.alice, rng); }), Errc::InvalidArgument);
}

TEST(Session, StreamValueIgnoresCounter) {
  const auto F = FieldParams::prime(10007);
  Rng rng(14);
  Pair p = established_pair(F, rng);
  const auto a2 = F.from_uint(5), a3 = F.from_uint(6), h = F.from_uint(7);
  const FieldElement first = stream_compose(p.alice, a2, a3, h).y;
  p.alice.msg_counter += 1000;
  EXPECT_EQ(stream_compose(p.alice, a2, a3, h).y, first);
}

TEST(Session, CyclicGeneratorIsIsolatedAcrossNonces) {
  const std::uint64_t p = 10007;
  const auto F = FieldParams::prime(p);
  Rng rng(15);
  const SharedSecret S = support::random_secret(rng);
  auto establish = [&](const Nonce& z) {
    SessionState a = SessionState::open(F, S, z, SessionMode::SharedRoot);
    SessionState b = SessionState::open(F, S, z, SessionMode::SharedRoot);
    shared_root_init_receive(b, shared_root_init_send(a, rng).message, rng);
    return a;
  };
  SessionState one = establish(support::random_nonce(rng));
  SessionState two = establish(support::random_nonce(rng));
  const std::size_t n = 5000;
  std::size_t collisions = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto a2 = F.from_uint(i % p), a3 = F.from_uint((i + 1) % p), h = F.from_uint((3 * i) % p);
    if (stream_compose(one, a2, a3, h).y == stream_compose(two, a2, a3, h).y) ++collisions;
  }
  // About n / p = 0.5 expected.
  EXPECT_LE(collisions, 10u);
}
