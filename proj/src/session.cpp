#include "ibc/session.hpp"

#include <array>

#include "ibc/codec.hpp"
#include "ibc/disc_scheme.hpp"
#include "ibc/error.hpp"
#include "ibc/poly.hpp"

namespace ibc {

namespace {

constexpr int kSampleAttempts = 1024;

void require_mode(const SessionState& st, SessionMode mode) {
  if (st.mode != mode) throw Error(Errc::InvalidArgument, "operation does not match the session mode");
}

FieldElement shifted_value(const FieldElement& a1, const FieldElement& a2, const FieldElement& a3,
                           const FieldElement& t, const FieldElement& h) {
  const std::array<FieldElement, 3> roots{a1, a2, a3};
  return evaluate(from_roots(roots), t + h);
}

bool admits_triple(const FieldElement& D) { return !D.is_zero() && sqrt(D).has_value(); }

constexpr std::uint32_t kInvariantAttempts = 256;

}  // namespace

FieldElement derive_session_invariant(const SharedSecret& S, const Nonce& z, const FieldParams& params) {
  FieldElement D = derive_invariant(S, z, params);
  const Bytes s(S.bytes.begin(), S.bytes.end()), n(z.bytes.begin(), z.bytes.end());
  for (std::uint32_t k = 1; !admits_triple(D); ++k) {
    if (k == kInvariantAttempts) throw Error(Errc::InternalError, "no square invariant derived");
    const Bytes ctr{static_cast<std::uint8_t>(k >> 24), static_cast<std::uint8_t>(k >> 16),
                    static_cast<std::uint8_t>(k >> 8), static_cast<std::uint8_t>(k)};
    D = hash_to_field(tags::kInvariant, {s, n, ctr}, params, Constraint::Nonzero);
  }
  return D;
}

SessionState SessionState::open(const FieldParams& params, const SharedSecret& S, const Nonce& z, SessionMode mode) {
  SessionState st{params, S, z, mode, derive_t(S, z, params), std::nullopt, std::nullopt, 0};
  if (mode == SessionMode::DerivedInvariant) st.D = derive_session_invariant(S, z, params);
  return st;
}

std::optional<RootTriple> complete_triple(const FieldElement& D, const FieldElement& a2, const FieldElement& a3,
                                          Rng& rng) {
  const auto a1s = solve_a1_from_discriminant(a2, a3, D);
  if (a1s.empty()) return std::nullopt;
  return RootTriple{a1s[random_below(a1s.size(), rng)], a2, a3};
}

RootTriple sample_triple_with_discriminant(const FieldElement& D, Rng& rng) {
  if (D.is_zero()) throw Error(Errc::ZeroDiscriminant, "cannot sample a triple with D = 0");
  if (!admits_triple(D)) throw Error(Errc::SamplingFailure, "D is not a square, so no root triple has it");
  const FieldParams& F = D.params();
  for (int attempt = 0; attempt < kSampleAttempts; ++attempt) {
    FieldElement a2 = random_element(F, rng);
    FieldElement a3 = random_element(F, rng);
    if (a2 == a3) continue;
    if (auto triple = complete_triple(D, a2, a3, rng)) return *triple;
  }
  throw Error(Errc::SamplingFailure, "no (a2, a3) pair admits the requested discriminant");
}

MinimalSend minimal_send(SessionState& st, Rng& rng) {
  require_mode(st, SessionMode::DerivedInvariant);
  const RootTriple triple = sample_triple_with_discriminant(*st.D, rng);
  FieldElement h = random_element(st.params, rng);
  FieldElement y = shifted_value(triple.a1, triple.a2, triple.a3, st.t, h);
  ++st.msg_counter;
  return {MinimalMessage{triple.a2, triple.a3, std::move(y)}, std::move(h)};
}

std::vector<FieldElement> minimal_receive(SessionState& st, const MinimalMessage& msg, Rng& rng) {
  require_mode(st, SessionMode::DerivedInvariant);
  if (msg.a2 == msg.a3) throw Error(Errc::NoCandidateRoot, "a2 = a3");
  ++st.msg_counter;
  return candidate_offsets(msg.a2, msg.a3, *st.D, st.t, msg.y, rng);
}

InitSend shared_root_init_send(SessionState& st, Rng& rng) {
  require_mode(st, SessionMode::SharedRoot);
  if (st.a1) throw Error(Errc::InvalidArgument, "shared root already initialised");
  const FieldParams& F = st.params;
  for (int attempt = 0; attempt < kSampleAttempts; ++attempt) {
    std::array<FieldElement, 3> roots{random_element(F, rng), random_element(F, rng), random_element(F, rng)};
    if (roots[0] == roots[1] || roots[0] == roots[2] || roots[1] == roots[2]) continue;
    FieldElement h = random_element(F, rng);
    const Polynomial P = from_roots(roots);
    FieldElement D = discriminant_cubic(P);
    FieldElement y = evaluate(P, st.t + h);

    bool ambiguous = false;
    for (const auto& other : solve_a1_from_discriminant(roots[1], roots[2], D)) {
      if (other == roots[0]) continue;
      const std::array<FieldElement, 3> alt{other, roots[1], roots[2]};
      if (!solve_shift(from_roots(alt), st.t, y, rng).empty()) {
        ambiguous = true;
        break;
      }
    }
    if (ambiguous) continue;

    st.a1 = roots[0];
    ++st.msg_counter;
    return {SharedRootInit{roots[1], roots[2], std::move(D), std::move(y)}, std::move(h), roots[0]};
  }
  throw Error(Errc::SamplingFailure, "no unambiguous initialisation found");
}

RootCandidate shared_root_init_receive(SessionState& st, const SharedRootInit& msg, Rng& rng) {
  require_mode(st, SessionMode::SharedRoot);
  if (st.a1) throw Error(Errc::InvalidArgument, "shared root already initialised");
  if (msg.a2 == msg.a3 || msg.D.is_zero()) throw Error(Errc::NoCandidateRoot, "degenerate (a2, a3, D)");
  const auto a1s = solve_a1_from_discriminant(msg.a2, msg.a3, msg.D);
  if (a1s.empty()) throw Error(Errc::NoCandidateRoot, "no a1 satisfies the discriminant");

  std::vector<RootCandidate> viable;
  for (const auto& a1 : a1s) {
    const std::array<FieldElement, 3> roots{a1, msg.a2, msg.a3};
    auto offsets = solve_shift(from_roots(roots), st.t, msg.y, rng);
    if (!offsets.empty()) viable.push_back({a1, std::move(offsets)});
  }
  if (viable.empty()) throw Error(Errc::NoShiftSolution, "no candidate polynomial reaches y");
  if (viable.size() > 1) throw Error(Errc::AmbiguousInit, std::to_string(viable.size()) + " viable a1 candidates");
  st.a1 = viable.front().a1;
  ++st.msg_counter;
  return std::move(viable.front());
}

StreamSend stream_send(SessionState& st, Rng& rng) {
  for (;;) {
    FieldElement a2 = random_element(st.params, rng);
    FieldElement a3 = random_element(st.params, rng);
    if (a2 == a3) continue;
    return stream_compose(st, a2, a3, random_element(st.params, rng));
  }
}

StreamSend stream_compose(SessionState& st, const FieldElement& a2, const FieldElement& a3, const FieldElement& h) {
  require_mode(st, SessionMode::SharedRoot);
  if (!st.a1) throw Error(Errc::UninitializedSession, "shared root not established");
  if (a2 == a3) throw Error(Errc::InvalidArgument, "stream tuple needs a2 != a3");
  FieldElement y = shifted_value(*st.a1, a2, a3, st.t, h);
  ++st.msg_counter;
  return {SharedRootStream{a2, a3, h}, std::move(y)};
}

FieldElement stream_receive(SessionState& st, const SharedRootStream& msg) {
  require_mode(st, SessionMode::SharedRoot);
  if (!st.a1) throw Error(Errc::UninitializedSession, "shared root not established");
  ++st.msg_counter;
  return shifted_value(*st.a1, msg.a2, msg.a3, st.t, msg.h);
}

}  // namespace ibc
