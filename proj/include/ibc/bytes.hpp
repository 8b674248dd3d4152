#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ibc {

using Bytes = std::vector<std::uint8_t>;

std::string to_hex(std::span<const std::uint8_t> bytes);
// Accepts upper or lower case; throws Errc::InvalidArgument on odd length or
// non-hex characters.
Bytes from_hex(std::string_view hex);

// 32 opaque bytes with a distinct type per role.
template <typename Role>
struct Bytes32 {
  std::array<std::uint8_t, 32> bytes{};

  std::span<const std::uint8_t> span() const { return bytes; }
  std::string to_hex() const { return ibc::to_hex(bytes); }
  static Bytes32 from_span(std::span<const std::uint8_t> s);
  static Bytes32 from_hex(std::string_view hex) { return from_span(ibc::from_hex(hex)); }

  friend bool operator==(const Bytes32&, const Bytes32&) = default;
};

void require_length(std::size_t actual, std::size_t expected, const char* what);

template <typename Role>
Bytes32<Role> Bytes32<Role>::from_span(std::span<const std::uint8_t> s) {
  require_length(s.size(), 32, "32-byte value");
  Bytes32 out;
  std::copy(s.begin(), s.end(), out.bytes.begin());
  return out;
}

using SharedSecret = Bytes32<struct SharedSecretRole>;
using Nonce = Bytes32<struct NonceRole>;
using IntegrityTag = Bytes32<struct IntegrityTagRole>;
using Digest = std::array<std::uint8_t, 32>;

}  // namespace ibc
