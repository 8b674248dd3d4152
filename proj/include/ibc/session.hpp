#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ibc/bytes.hpp"
#include "ibc/field.hpp"
#include "ibc/messages.hpp"

namespace ibc {

enum class SessionMode { DerivedInvariant, SharedRoot };

/// One party's view of a session. Single owner; not shared across threads.
///
/// t = derive_t(S, z) always. In derived-invariant mode D = derive_session_invariant(S, z)
/// is fixed for the whole session and never transmitted. In shared-root mode a1
/// is set once initialisation has completed.
struct SessionState {
  FieldParams params;
  SharedSecret S;
  Nonce z;
  SessionMode mode;
  FieldElement t;
  std::optional<FieldElement> D;
  std::optional<FieldElement> a1;
  std::uint64_t msg_counter = 0;

  static SessionState open(const FieldParams& params, const SharedSecret& S, const Nonce& z, SessionMode mode);
};

/// A discriminant of three distinct roots is a nonzero square in odd
/// characteristic. Returns derive_invariant(S, z) when it is one, else the first
/// square among hash_to_field("IBC/inv", [S, z, be32(k)], nonzero), k = 1, 2, ...
FieldElement derive_session_invariant(const SharedSecret& S, const Nonce& z, const FieldParams& params);

struct RootTriple {
  FieldElement a1, a2, a3;
};

// Uniform a1 among the discriminant-consistent completions of (a2, a3), if any.
std::optional<RootTriple> complete_triple(const FieldElement& D, const FieldElement& a2, const FieldElement& a3,
                                          Rng& rng);
// Draws a2 != a3 until complete_triple succeeds; 1024 draws at most
// (Errc::SamplingFailure). A non-square D fails at once.
RootTriple sample_triple_with_discriminant(const FieldElement& D, Rng& rng);

// ---------------------------------------------------------------------------
// derived-invariant mode

struct MinimalSend {
  MinimalMessage message;
  FieldElement h;
};

MinimalSend minimal_send(SessionState& st, Rng& rng);
// Every h consistent with the session D; NoCandidateRoot or NoShiftSolution
// signal tampering or a desynchronised session.
std::vector<FieldElement> minimal_receive(SessionState& st, const MinimalMessage& msg, Rng& rng);

// ---------------------------------------------------------------------------
// shared-root mode

struct InitSend {
  SharedRootInit message;
  FieldElement h;
  FieldElement a1;
};

struct RootCandidate {
  FieldElement a1;
  std::vector<FieldElement> offsets;
};

/// Sends <a2, a3, D, y> and commits a1 on the sender. Triples for which more
/// than one a1 candidate would reach y are redrawn, since the receiver could not
/// commit them.
InitSend shared_root_init_send(SessionState& st, Rng& rng);

/// Recovers a1 and the matching offsets, committing st.a1 only when exactly one
/// a1 candidate reaches y (Errc::AmbiguousInit otherwise).
RootCandidate shared_root_init_receive(SessionState& st, const SharedRootInit& msg, Rng& rng);

struct StreamSend {
  SharedRootStream message;
  FieldElement y;
};

// Fresh a2 != a3 and h; y = P(t + h) with P = (x - a1)(x - a2)(x - a3).
StreamSend stream_send(SessionState& st, Rng& rng);
// Streams a caller-chosen tuple, e.g. from a weak counter-based generator.
StreamSend stream_compose(SessionState& st, const FieldElement& a2, const FieldElement& a3, const FieldElement& h);
FieldElement stream_receive(SessionState& st, const SharedRootStream& msg);

}  // namespace ibc
