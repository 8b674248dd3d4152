#include "ibc/disc_scheme.hpp"

#include <algorithm>
#include <array>

#include "ibc/codec.hpp"
#include "ibc/error.hpp"
#include "ibc/poly.hpp"

namespace ibc {

DiscGeneration alice_generate(const FieldParams& params, const SharedSecret& S, const Nonce& z, bool with_auth,
                              Rng& rng) {
  FieldElement h = random_element(params, rng);
  return alice_generate_with_offset(params, S, z, h, with_auth, rng);
}

DiscGeneration alice_generate_with_offset(const FieldParams& params, const SharedSecret& S, const Nonce& z,
                                          const FieldElement& h, bool with_auth, Rng& rng) {
  const FieldElement t = derive_t(S, z, params);
  // Repeated roots are exactly the D = 0 case; redraw the whole triple.
  std::array<FieldElement, 3> roots{params.zero(), params.zero(), params.zero()};
  do {
    for (auto& r : roots) r = random_element(params, rng);
  } while (roots[0] == roots[1] || roots[0] == roots[2] || roots[1] == roots[2]);

  const Polynomial P = from_roots(roots);
  const FieldElement D = discriminant_cubic(P);
  const FieldElement y = evaluate(P, t + h);

  const std::array<FieldElement, 4> checked{roots[1], roots[2], D, y};
  DiscMessage msg{roots[1], roots[2], D, y, z, integrity_tag(TagKind::Check, S, z, checked), std::nullopt};
  if (with_auth) {
    const std::array<FieldElement, 1> hidden{h};
    msg.h_auth = integrity_tag(TagKind::Auth, S, z, hidden);
  }
  return {std::move(msg), h, roots[0]};
}

std::vector<FieldElement> candidate_offsets(const FieldElement& a2, const FieldElement& a3, const FieldElement& D,
                                            const FieldElement& t, const FieldElement& y, Rng& rng) {
  const auto a1s = solve_a1_from_discriminant(a2, a3, D);
  if (a1s.empty()) throw Error(Errc::NoCandidateRoot, "no a1 satisfies the discriminant");
  std::vector<FieldElement> offsets;
  for (const auto& a1 : a1s) {
    const std::array<FieldElement, 3> roots{a1, a2, a3};
    for (auto& h : solve_shift(from_roots(roots), t, y, rng)) offsets.push_back(std::move(h));
  }
  if (offsets.empty()) throw Error(Errc::NoShiftSolution, "no candidate polynomial reaches y");
  std::sort(offsets.begin(), offsets.end());
  offsets.erase(std::unique(offsets.begin(), offsets.end()), offsets.end());
  return offsets;
}

std::vector<FieldElement> bob_recover(const SharedSecret& S, const DiscMessage& msg, Rng& rng) {
  const FieldParams& params = msg.a2.params();
  const std::array<FieldElement, 4> checked{msg.a2, msg.a3, msg.D, msg.y};
  if (integrity_tag(TagKind::Check, S, msg.z, checked) != msg.h_check) {
    throw Error(Errc::IntegrityFailure, "H_check mismatch");
  }
  if (msg.a2 == msg.a3 || msg.D.is_zero()) throw Error(Errc::NoCandidateRoot, "degenerate (a2, a3, D)");

  const FieldElement t = derive_t(S, msg.z, params);
  std::vector<FieldElement> offsets = candidate_offsets(msg.a2, msg.a3, msg.D, t, msg.y, rng);
  if (!msg.h_auth) return offsets;

  std::vector<FieldElement> survivors;
  for (const auto& h : offsets) {
    const std::array<FieldElement, 1> hidden{h};
    if (integrity_tag(TagKind::Auth, S, msg.z, hidden) == *msg.h_auth) survivors.push_back(h);
  }
  if (survivors.empty()) throw Error(Errc::IntegrityFailure, "H_auth matches no candidate offset");
  if (survivors.size() > 1) throw Error(Errc::AmbiguousAuth, "H_auth matches several candidate offsets");
  return survivors;
}

}  // namespace ibc
