#pragma once

#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "ibc/bytes.hpp"
#include "ibc/field.hpp"
#include "ibc/messages.hpp"
#include "ibc/projective.hpp"

namespace ibc {

// ---------------------------------------------------------------------------
// SHA-256

class Sha256 {
 public:
  Sha256();
  ~Sha256();
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;

  Sha256& update(std::span<const std::uint8_t> data);
  Sha256& update(std::string_view data);
  Sha256& update_u8(std::uint8_t v);
  Sha256& update_u32(std::uint32_t v);  // big-endian
  Digest finish();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

Digest sha256(std::span<const std::uint8_t> data);

// ---------------------------------------------------------------------------
// Domain-separated derivations
//
// Registered tags: IBC/t, IBC/inv, IBC/mask and IBC/commit feed hash_to_field;
// IBC/check, IBC/auth and IBC/commit-ctx feed tagged_digest. Any other tag is
// rejected with Errc::UnknownTag.

namespace tags {
inline constexpr std::string_view kT = "IBC/t";
inline constexpr std::string_view kInvariant = "IBC/inv";
inline constexpr std::string_view kMask = "IBC/mask";
inline constexpr std::string_view kCommit = "IBC/commit";
inline constexpr std::string_view kCheck = "IBC/check";
inline constexpr std::string_view kAuth = "IBC/auth";
inline constexpr std::string_view kCommitContext = "IBC/commit-ctx";
}  // namespace tags

enum class Constraint { Any, Nonzero };

/// digest_i = SHA-256(tag || 0x00 || ctr || concat(be32(len(part)) || part)),
/// one digest per coefficient with ctr = base + i, each read as a big-endian
/// integer mod p. With Constraint::Nonzero a zero result bumps base by n.
FieldElement hash_to_field(std::string_view tag, const std::vector<Bytes>& parts, const FieldParams& params,
                           Constraint constraint);

// SHA-256(tag || 0x00 || concat(be32(len(part)) || part)).
Digest tagged_digest(std::string_view tag, const std::vector<Bytes>& parts);

FieldElement derive_t(const SharedSecret& S, const Nonce& z, const FieldParams& params);
FieldElement derive_invariant(const SharedSecret& S, const Nonce& z, const FieldParams& params);
// Redraws with an attempt counter until ad - bc != 0; 256 attempts at most.
MobiusMap derive_mask(const SharedSecret& S, const Nonce& z, const FieldParams& params);

enum class TagKind { Check, Auth };

IntegrityTag integrity_tag(TagKind kind, const SharedSecret& S, const Nonce& z, std::span<const FieldElement> parts);
IntegrityTag integrity_tag(TagKind kind, const SharedSecret& S, const Nonce& z, const std::vector<Bytes>& parts);

// ---------------------------------------------------------------------------
// Wire format
//
//   "IBC1" | 0x01 | type | be16 field count | { be32 length | bytes }*
//
// Field elements use their canonical fixed-width encoding; nonces and tags are
// 32 raw bytes. Field order follows the message structs.

inline constexpr std::uint8_t kWireVersion = 0x01;

Bytes encode_message(const Message& m);
// Throws BadMagic, BadVersion, UnknownType, Truncated, or Malformed (wrong
// field count, wrong field width, unreduced residue, trailing bytes).
Message decode_message(std::span<const std::uint8_t> bytes, const FieldParams& params);

}  // namespace ibc
