#pragma once

#include <string_view>

#include "ibc/field.hpp"

namespace ibc {

// 2^256 - 2^32 - 977, the secp256k1 base-field prime.
inline constexpr std::string_view kP256k1Hex = "fffffffffffffffffffffffffffffffffffffffffffffffffffffffefffffc2f";

// "demo13", "demo10007", "p256k1", or a hex literal (optional 0x prefix).
// named_modulus only parses; named_prime_field also validates the field.
mpz_class named_modulus(std::string_view name);
FieldParams named_prime_field(std::string_view name);

}  // namespace ibc
