#pragma once

#include <cstdint>
#include <ostream>
#include <set>
#include <vector>

#include "ibc/bytes.hpp"
#include "ibc/field.hpp"
#include "ibc/messages.hpp"
#include "ibc/moduli.hpp"

namespace ibc {

// Readable gtest failure output.
inline void PrintTo(const FieldElement& x, std::ostream* os) { *os << x.to_hex(); }

}  // namespace ibc

namespace support {

inline ibc::FieldParams p256() { return ibc::named_prime_field("p256k1"); }

// F_{3^5} = F_3[x]/(x^5 + 2x + 1).
inline ibc::FieldParams f243() { return ibc::FieldParams::extension(3, {1, 2, 0, 0, 0, 1}); }

// F_{2^3} = F_2[x]/(x^3 + x + 1).
inline ibc::FieldParams f8() { return ibc::FieldParams::extension(2, {1, 1, 0, 1}); }

template <class B>
B random_bytes32(ibc::Rng& rng) {
  B out;
  for (auto& b : out.bytes) b = static_cast<std::uint8_t>(rng());
  return out;
}

inline ibc::SharedSecret random_secret(ibc::Rng& rng) { return random_bytes32<ibc::SharedSecret>(rng); }
inline ibc::Nonce random_nonce(ibc::Rng& rng) { return random_bytes32<ibc::Nonce>(rng); }

inline std::uint64_t u(const ibc::FieldElement& x) { return x.to_integer().get_ui(); }

inline std::vector<std::uint64_t> u(const std::vector<ibc::FieldElement>& xs) {
  std::vector<std::uint64_t> out;
  for (const auto& x : xs) out.push_back(u(x));
  return out;
}

template <class B>
B random_tag(ibc::Rng& rng) {
  return random_bytes32<B>(rng);
}

// A structurally valid message of the given wire type with uniform fields.
inline ibc::Message random_message(ibc::MessageType type, const ibc::FieldParams& F, ibc::Rng& rng) {
  auto e = [&] { return ibc::random_element(F, rng); };
  switch (type) {
    case ibc::MessageType::DiscFull: {
      ibc::DiscMessage m{e(), e(), e(), e(), random_nonce(rng), random_tag<ibc::IntegrityTag>(rng), std::nullopt};
      if (rng() & 1) m.h_auth = random_tag<ibc::IntegrityTag>(rng);
      return m;
    }
    case ibc::MessageType::DiscMinimal:
      return ibc::MinimalMessage{e(), e(), e()};
    case ibc::MessageType::SharedRootInit:
      return ibc::SharedRootInit{e(), e(), e(), e()};
    case ibc::MessageType::SharedRootStream:
      return ibc::SharedRootStream{e(), e(), e()};
    case ibc::MessageType::CrossRatio: {
      ibc::CrMessage m{e(), e(), e(), random_nonce(rng), std::nullopt};
      if (rng() & 1) m.h_check = random_tag<ibc::IntegrityTag>(rng);
      return m;
    }
  }
  return ibc::MinimalMessage{e(), e(), e()};
}

inline constexpr ibc::MessageType kAllTypes[] = {ibc::MessageType::DiscFull, ibc::MessageType::DiscMinimal,
                                                 ibc::MessageType::SharedRootInit, ibc::MessageType::SharedRootStream,
                                                 ibc::MessageType::CrossRatio};

inline std::set<std::uint64_t> u_set(const std::vector<ibc::FieldElement>& xs) {
  const auto v = u(xs);
  return {v.begin(), v.end()};
}

}  // namespace support
