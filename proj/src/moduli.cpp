#include "ibc/moduli.hpp"

#include <string>

#include "ibc/error.hpp"

namespace ibc {

mpz_class named_modulus(std::string_view name) {
  if (name == "demo13") return 13;
  if (name == "demo10007") return 10007;
  if (name == "p256k1") return mpz_class(std::string(kP256k1Hex), 16);
  std::string hex(name);
  if (hex.rfind("0x", 0) == 0 || hex.rfind("0X", 0) == 0) hex = hex.substr(2);
  mpz_class p;
  if (hex.empty() || p.set_str(hex, 16) != 0) throw Error(Errc::InvalidParams, "unknown modulus '" + std::string(name) + "'");
  return p;
}

FieldParams named_prime_field(std::string_view name) { return FieldParams::prime(named_modulus(name)); }

}  // namespace ibc
