#pragma once

#include <cstdint>
#include <optional>
#include <variant>

#include "ibc/bytes.hpp"
#include "ibc/field.hpp"

namespace ibc {

enum class MessageType : std::uint8_t {
  DiscFull = 0x01,
  DiscMinimal = 0x02,
  SharedRootInit = 0x03,
  SharedRootStream = 0x04,
  CrossRatio = 0x05,
};

// <a2, a3, D, y, z, H_check [, H_auth]>
struct DiscMessage {
  FieldElement a2, a3, D, y;
  Nonce z;
  IntegrityTag h_check;
  std::optional<IntegrityTag> h_auth;

  friend bool operator==(const DiscMessage&, const DiscMessage&) = default;
};

// Derived-invariant mode: <a2, a3, y>; D and z are session state.
struct MinimalMessage {
  FieldElement a2, a3, y;
  friend bool operator==(const MinimalMessage&, const MinimalMessage&) = default;
};

// Shared-root initialisation: <a2, a3, D, y>.
struct SharedRootInit {
  FieldElement a2, a3, D, y;
  friend bool operator==(const SharedRootInit&, const SharedRootInit&) = default;
};

// Shared-root streaming: <a2, a3, h>.
struct SharedRootStream {
  FieldElement a2, a3, h;
  friend bool operator==(const SharedRootStream&, const SharedRootStream&) = default;
};

// Masked (or plain) triple plus nonce, optional H_check over the triple.
struct CrMessage {
  FieldElement m1, m2, m3;
  Nonce z;
  std::optional<IntegrityTag> h_check;

  friend bool operator==(const CrMessage&, const CrMessage&) = default;
};

using SessionMessage = std::variant<MinimalMessage, SharedRootInit, SharedRootStream>;
using Message = std::variant<DiscMessage, MinimalMessage, SharedRootInit, SharedRootStream, CrMessage>;

MessageType type_of(const Message& m);

}  // namespace ibc
