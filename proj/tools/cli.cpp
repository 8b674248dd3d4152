#include "cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <fstream>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string_view>

#include "ibc/applications.hpp"
#include "ibc/codec.hpp"
#include "ibc/cr_scheme.hpp"
#include "ibc/disc_scheme.hpp"
#include "ibc/error.hpp"
#include "ibc/moduli.hpp"
#include "ibc/poly.hpp"
#include "ibc/projective.hpp"
#include "ibc/session.hpp"

namespace ibc::cli {
namespace {

using nlohmann::json;

struct Options {
  std::string modulus = "demo10007";
  std::string ext;
  std::optional<std::uint64_t> seed;
  std::string secret;
  std::string nonce;
  bool json = false;

  bool tamper = false;
  std::optional<std::size_t> tamper_bit;

  bool auth = true;
  bool mask = true;
  bool check = true;
  std::size_t count = 3;

  std::size_t sessions = 2000;
  double alpha = 0.01;

  std::string puzzle_file;
  std::string witness_file;
  std::string puzzle_out;
  std::string witness_out;
};

// Raised while turning options into a context; maps to the usage exit code.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Bytes seed_bytes(std::string_view label, std::uint64_t seed) {
  Bytes in(label.begin(), label.end());
  for (int i = 7; i >= 0; --i) in.push_back(static_cast<std::uint8_t>(seed >> (8 * i)));
  const Digest d = sha256(in);
  return Bytes(d.begin(), d.end());
}

struct Context {
  FieldParams F;
  std::uint64_t seed;
  SharedSecret S;
  Nonce z;
  Rng rng;
};

FieldParams field_from(const Options& o) {
  if (o.ext.empty()) return named_prime_field(o.modulus);
  // Monic modulus coefficients, constant term first, comma separated.
  std::vector<mpz_class> coeffs;
  std::stringstream ss(o.ext);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw UsageError("--ext expects comma-separated decimal coefficients");
    coeffs.emplace_back(item);
  }
  return FieldParams::extension(named_modulus(o.modulus), std::move(coeffs));
}

Context context_from(const Options& o) {
  try {
    const FieldParams F = field_from(o);
    const std::uint64_t seed = o.seed ? *o.seed : std::random_device{}() * 0x100000001ull ^ std::random_device{}();
    const SharedSecret S =
        o.secret.empty() ? SharedSecret::from_span(seed_bytes("ibc-cli/secret", seed)) : SharedSecret::from_hex(o.secret);
    const Nonce z = o.nonce.empty() ? Nonce::from_span(seed_bytes("ibc-cli/nonce", seed)) : Nonce::from_hex(o.nonce);
    return {F, seed, S, z, Rng(seed)};
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

// ---------------------------------------------------------------------------
// Transcript

std::string type_name(MessageType t) {
  switch (t) {
    case MessageType::DiscFull: return "disc-full";
    case MessageType::DiscMinimal: return "disc-minimal";
    case MessageType::SharedRootInit: return "shared-root-init";
    case MessageType::SharedRootStream: return "shared-root-stream";
    case MessageType::CrossRatio: return "cross-ratio";
  }
  return "unknown";
}

json decoded_json(const Message& m) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, DiscMessage>) {
          json j{{"a2", v.a2.to_hex()}, {"a3", v.a3.to_hex()}, {"D", v.D.to_hex()},
                 {"y", v.y.to_hex()},   {"z", v.z.to_hex()},   {"h_check", v.h_check.to_hex()}};
          if (v.h_auth) j["h_auth"] = v.h_auth->to_hex();
          return j;
        } else if constexpr (std::is_same_v<T, MinimalMessage>) {
          return {{"a2", v.a2.to_hex()}, {"a3", v.a3.to_hex()}, {"y", v.y.to_hex()}};
        } else if constexpr (std::is_same_v<T, SharedRootInit>) {
          return {{"a2", v.a2.to_hex()}, {"a3", v.a3.to_hex()}, {"D", v.D.to_hex()}, {"y", v.y.to_hex()}};
        } else if constexpr (std::is_same_v<T, SharedRootStream>) {
          return {{"a2", v.a2.to_hex()}, {"a3", v.a3.to_hex()}, {"h", v.h.to_hex()}};
        } else {
          json j{{"m1", v.m1.to_hex()}, {"m2", v.m2.to_hex()}, {"m3", v.m3.to_hex()}, {"z", v.z.to_hex()}};
          if (v.h_check) j["h_check"] = v.h_check->to_hex();
          return j;
        }
      },
      m);
}

// Byte offsets of field payloads in an encoded message, skipping the header
// and every length prefix.
std::vector<std::size_t> payload_offsets(const Bytes& wire) {
  std::vector<std::size_t> out;
  for (std::size_t off = 8; off + 4 <= wire.size();) {
    const std::size_t len = std::size_t{wire[off]} << 24 | std::size_t{wire[off + 1]} << 16 |
                            std::size_t{wire[off + 2]} << 8 | wire[off + 3];
    for (std::size_t i = 0; i < len && off + 4 + i < wire.size(); ++i) out.push_back(off + 4 + i);
    off += 4 + len;
  }
  return out;
}

// In-memory channel: every message is encoded, logged, optionally corrupted,
// and decoded again before the receiver sees it.
class Channel {
 public:
  Channel(const Options& o, const Context& ctx, std::string mode) : o_(o), F_(ctx.F) {
    transcript_ = {{"mode", std::move(mode)},
                   {"modulus_hex", ctx.F.characteristic().get_str(16)},
                   {"seed", ctx.seed},
                   {"messages", json::array()}};
    if (!o.ext.empty()) transcript_["extension"] = o.ext;
  }

  Message transmit(const Message& m) {
    Bytes wire = encode_message(m);
    json entry{{"type", type_name(type_of(m))}, {"hex", to_hex(wire)}, {"decoded", decoded_json(m)}};
    if (o_.tamper && !tampered_) {
      // The default bit is the lowest bit of the last payload byte.
      const auto payload = payload_offsets(wire);
      const std::size_t bits = payload.size() * 8;
      const std::size_t bit = o_.tamper_bit ? *o_.tamper_bit % bits : bits - 8;
      wire[payload[bit / 8]] ^= static_cast<std::uint8_t>(1u << (bit % 8));
      entry["tampered_hex"] = to_hex(wire);
      entry["tampered_bit"] = bit;
      tampered_ = true;
    }
    transcript_["messages"].push_back(std::move(entry));
    return decode_message(wire, F_);
  }

  json& result() { return transcript_["result"]; }
  const json& transcript() const { return transcript_; }

 private:
  const Options& o_;
  FieldParams F_;
  json transcript_;
  bool tampered_ = false;
};

void print_transcript(const json& t, bool as_json, std::ostream& out) {
  if (as_json) {
    out << t.dump(2) << '\n';
    return;
  }
  out << "mode      " << t.at("mode").get<std::string>() << '\n';
  out << "modulus   0x" << t.at("modulus_hex").get<std::string>() << '\n';
  if (t.contains("extension")) out << "extension " << t.at("extension").get<std::string>() << '\n';
  out << "seed      " << t.at("seed").get<std::uint64_t>() << '\n';
  for (const auto& m : t.at("messages")) {
    out << "message   " << m.at("type").get<std::string>() << ' ' << m.at("hex").get<std::string>() << '\n';
    if (m.contains("tampered_hex"))
      out << "tampered  bit " << m.at("tampered_bit").get<std::size_t>() << ' '
          << m.at("tampered_hex").get<std::string>() << '\n';
  }
  for (const auto& [k, v] : t.at("result").items())
    out << "result    " << k << " = " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
}

// Runs a protocol flow; library errors during the flow are protocol failures.
int run_flow(const Options& o, Channel& ch, std::ostream& out, const std::function<bool(Channel&)>& flow) {
  bool ok = false;
  try {
    ok = flow(ch);
    ch.result()["status"] = ok ? "ok" : "failure";
  } catch (const Error& e) {
    ch.result()["status"] = "failure";
    ch.result()["error"] = std::string(to_string(e.code()));
    ch.result()["detail"] = e.what();
  }
  print_transcript(ch.transcript(), o.json, out);
  return ok ? kOk : kProtocolFailure;
}

json hex_list(const std::vector<FieldElement>& xs) {
  json j = json::array();
  for (const auto& x : xs) j.push_back(x.to_hex());
  return j;
}

// ---------------------------------------------------------------------------
// Commands

int demo_disc(const Options& o, std::ostream& out) {
  Context ctx = context_from(o);
  Channel ch(o, ctx, "demo-disc");
  return run_flow(o, ch, out, [&](Channel& c) {
    const DiscGeneration gen = alice_generate(ctx.F, ctx.S, ctx.z, o.auth, ctx.rng);
    const auto msg = std::get<DiscMessage>(c.transmit(gen.message));
    const auto got = bob_recover(ctx.S, msg, ctx.rng);
    c.result()["sent_h"] = gen.h.to_hex();
    c.result()["candidates"] = hex_list(got);
    return std::find(got.begin(), got.end(), gen.h) != got.end();
  });
}

int demo_cr(const Options& o, std::ostream& out) {
  Context ctx = context_from(o);
  Channel ch(o, ctx, "demo-cr");
  return run_flow(o, ch, out, [&](Channel& c) {
    const CrGeneration gen = cr_alice_generate(ctx.F, ctx.S, ctx.z, o.mask, o.check, ctx.rng);
    const auto msg = std::get<CrMessage>(c.transmit(gen.message));
    const FieldElement z4 = cr_bob_recover(ctx.S, msg, o.mask);
    c.result()["sent_z4"] = gen.z4.to_hex();
    c.result()["recovered_z4"] = z4.to_hex();
    return z4 == gen.z4;
  });
}

int session_minimal(const Options& o, std::ostream& out) {
  Context ctx = context_from(o);
  Channel ch(o, ctx, "session-minimal");
  return run_flow(o, ch, out, [&](Channel& c) {
    SessionState alice = SessionState::open(ctx.F, ctx.S, ctx.z, SessionMode::DerivedInvariant);
    SessionState bob = SessionState::open(ctx.F, ctx.S, ctx.z, SessionMode::DerivedInvariant);
    std::size_t delivered = 0;
    json sent = json::array();
    for (std::size_t i = 0; i < o.count; ++i) {
      const MinimalSend s = minimal_send(alice, ctx.rng);
      const auto got = minimal_receive(bob, std::get<MinimalMessage>(c.transmit(s.message)), ctx.rng);
      sent.push_back(s.h.to_hex());
      if (std::find(got.begin(), got.end(), s.h) != got.end()) ++delivered;
    }
    c.result()["sent_h"] = sent;
    c.result()["delivered"] = delivered;
    return delivered == o.count;
  });
}

int session_shared_root(const Options& o, std::ostream& out) {
  Context ctx = context_from(o);
  Channel ch(o, ctx, "session-shared-root");
  return run_flow(o, ch, out, [&](Channel& c) {
    SessionState alice = SessionState::open(ctx.F, ctx.S, ctx.z, SessionMode::SharedRoot);
    SessionState bob = SessionState::open(ctx.F, ctx.S, ctx.z, SessionMode::SharedRoot);
    const InitSend init = shared_root_init_send(alice, ctx.rng);
    const RootCandidate root = shared_root_init_receive(bob, std::get<SharedRootInit>(c.transmit(init.message)), ctx.rng);
    std::size_t agreed = 0;
    json ys = json::array();
    for (std::size_t i = 0; i < o.count; ++i) {
      const StreamSend s = stream_send(alice, ctx.rng);
      const FieldElement y = stream_receive(bob, std::get<SharedRootStream>(c.transmit(s.message)));
      ys.push_back(s.y.to_hex());
      if (y == s.y) ++agreed;
    }
    c.result()["root_agreed"] = root.a1 == init.a1;
    c.result()["sent_y"] = ys;
    c.result()["agreed"] = agreed;
    return root.a1 == init.a1 && agreed == o.count;
  });
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write " + path);
  f << j.dump(2) << '\n';
}

// Accepts either a bare object or one wrapping it under `key`.
const json& unwrap(const json& j, const char* key) { return j.contains(key) ? j.at(key) : j; }

int puzzle_make_cmd(const Options& o, std::ostream& out) {
  Context ctx = context_from(o);
  const GeneratedPuzzle g = puzzle_make(ctx.F, ctx.rng);
  const json doc{{"modulus_hex", ctx.F.characteristic().get_str(16)},
                 {"seed", ctx.seed},
                 {"puzzle", to_json(g.puzzle)},
                 {"witness", to_json(g.witness)}};
  if (!o.puzzle_out.empty()) write_json_file(o.puzzle_out, to_json(g.puzzle));
  if (!o.witness_out.empty()) write_json_file(o.witness_out, to_json(g.witness));
  out << doc.dump(2) << '\n';
  return kOk;
}

Puzzle load_puzzle(const Options& o, const FieldParams& F) {
  try {
    return puzzle_from_json(unwrap(read_json_file(o.puzzle_file), "puzzle"), F);
  } catch (const Error& e) {
    throw UsageError(o.puzzle_file + ": " + e.what());
  }
}

int puzzle_solve_cmd(const Options& o, std::ostream& out) {
  const Context ctx = context_from(o);
  const Puzzle pz = load_puzzle(o, ctx.F);
  try {
    out << json{{"witness", to_json(puzzle_solve(pz))}}.dump(2) << '\n';
    return kOk;
  } catch (const Error& e) {
    out << json{{"error", std::string(to_string(e.code()))}, {"detail", e.what()}}.dump(2) << '\n';
    return kProtocolFailure;
  }
}

int puzzle_verify_cmd(const Options& o, std::ostream& out) {
  const Context ctx = context_from(o);
  const Puzzle pz = load_puzzle(o, ctx.F);
  PuzzleWitness w = [&] {
    try {
      return witness_from_json(unwrap(read_json_file(o.witness_file), "witness"), ctx.F);
    } catch (const Error& e) {
      throw UsageError(o.witness_file + ": " + e.what());
    }
  }();
  const bool valid = puzzle_verify(pz, w);
  out << json{{"valid", valid}}.dump(2) << '\n';
  return valid ? kOk : kProtocolFailure;
}

int experiment_cmd(const Options& o, std::ostream& out) {
  if (!o.ext.empty()) throw UsageError("experiment runs over prime fields only");
  const Context ctx = context_from(o);
  if (!ctx.F.characteristic().fits_ulong_p() || ctx.F.characteristic() > 65536)
    throw UsageError("experiment requires a prime below 2^16");
  ExperimentReport r;
  try {
    r = indistinguishability_experiment(ctx.F.characteristic().get_ui(), o.sessions, ctx.seed);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  const bool masked = r.masked_indistinguishable(o.alpha);
  const bool control = r.control_distinguished(o.alpha);
  json doc = r.to_json();
  doc["alpha"] = o.alpha;
  doc["masked_indistinguishable"] = masked;
  doc["control_distinguished"] = control;
  if (o.json) {
    out << doc.dump(2) << '\n';
  } else {
    out << "p " << r.p << ", " << r.sessions << " sessions per arm, seed " << r.seed << ", " << r.bins << " bins\n";
    for (std::size_t i = 0; i < r.coordinates.size(); ++i)
      out << "masked coordinate " << i + 1 << ": chi2 " << r.coordinates[i].chi2 << ", dof " << r.coordinates[i].dof
          << ", p-value " << r.coordinates[i].p_value << '\n';
    out << "unmasked control: distinct cross-ratios " << r.control_distinct_fixed << " vs " << r.control_distinct_random
        << ", p-value " << r.control.p_value << '\n';
    out << "masked arms indistinguishable: " << (masked ? "yes" : "no") << '\n';
    out << "control distinguished: " << (control ? "yes" : "no") << '\n';
  }
  return masked && control ? kOk : kProtocolFailure;
}

// ---------------------------------------------------------------------------
// Self-test: small property suites over every layer.

bool check_sha() {
  const auto hex = [](std::string_view s) { return to_hex(sha256(Bytes(s.begin(), s.end()))); };
  return hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855" &&
         hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad";
}

bool check_field(Rng& rng) {
  const std::array fields{named_prime_field("demo13"), named_prime_field("p256k1"),
                          FieldParams::extension(3, {1, 2, 0, 0, 0, 1})};
  for (const auto& F : fields) {
    for (int i = 0; i < 200; ++i) {
      const auto a = random_element(F, rng), b = random_element(F, rng), c = random_element(F, rng);
      if (a * (b + c) != a * b + a * c || (a * b) * c != a * (b * c) || a + (-a) != F.zero()) return false;
      if (!a.is_zero() && a * inv(a) != F.one()) return false;
      const auto r = sqrt(a * a);
      if (!r || *r * *r != a * a) return false;
    }
  }
  return true;
}

bool check_roots(Rng& rng) {
  const FieldParams F = named_prime_field("demo10007");
  for (int i = 0; i < 50; ++i) {
    std::vector<FieldElement> rs{random_element(F, rng), random_element(F, rng), random_element(F, rng)};
    auto got = roots_in_field(from_roots(rs), rng);
    std::sort(rs.begin(), rs.end());
    rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
    std::sort(got.begin(), got.end());
    if (got != rs) return false;
  }
  return true;
}

SharedSecret random_secret(Rng& rng) {
  Bytes b(32);
  for (auto& x : b) x = static_cast<std::uint8_t>(rng());
  return SharedSecret::from_span(b);
}

Nonce random_nonce(Rng& rng) {
  Bytes b(32);
  for (auto& x : b) x = static_cast<std::uint8_t>(rng());
  return Nonce::from_span(b);
}

bool check_disc(Rng& rng) {
  for (const char* name : {"demo10007", "p256k1"}) {
    const FieldParams F = named_prime_field(name);
    for (int i = 0; i < 20; ++i) {
      const SharedSecret S = random_secret(rng);
      const DiscGeneration gen = alice_generate(F, S, random_nonce(rng), true, rng);
      const auto msg = std::get<DiscMessage>(decode_message(encode_message(gen.message), F));
      const auto got = bob_recover(S, msg, rng);
      if (got.size() != 1 || got.front() != gen.h) return false;
      DiscMessage bad = msg;
      bad.y += F.one();
      try {
        bob_recover(S, bad, rng);
        return false;
      } catch (const Error& e) {
        if (e.code() != Errc::IntegrityFailure) return false;
      }
    }
  }
  return true;
}

bool check_cr(Rng& rng) {
  const FieldParams F = named_prime_field("p256k1");
  for (int i = 0; i < 20; ++i) {
    const SharedSecret S = random_secret(rng);
    const CrGeneration gen = cr_alice_generate(F, S, random_nonce(rng), true, true, rng);
    const auto msg = std::get<CrMessage>(decode_message(encode_message(gen.message), F));
    if (cr_bob_recover(S, msg, true) != gen.z4) return false;
  }
  for (int i = 0; i < 200; ++i) {
    const MobiusMap f = random_mobius(F, rng);
    std::array<ProjPoint, 4> z{random_element(F, rng), random_element(F, rng), random_element(F, rng),
                               random_element(F, rng)};
    if (cross_ratio(apply_mask(f, z[0]), apply_mask(f, z[1]), apply_mask(f, z[2]), apply_mask(f, z[3])) !=
        cross_ratio(z[0], z[1], z[2], z[3]))
      return false;
  }
  return true;
}

bool check_sessions(Rng& rng) {
  const FieldParams F = named_prime_field("p256k1");
  const SharedSecret S = random_secret(rng);
  const Nonce z = random_nonce(rng);
  SessionState a = SessionState::open(F, S, z, SessionMode::DerivedInvariant);
  SessionState b = SessionState::open(F, S, z, SessionMode::DerivedInvariant);
  for (int i = 0; i < 20; ++i) {
    const MinimalSend s = minimal_send(a, rng);
    const auto got = minimal_receive(b, std::get<MinimalMessage>(decode_message(encode_message(s.message), F)), rng);
    if (std::find(got.begin(), got.end(), s.h) == got.end()) return false;
  }
  SessionState ra = SessionState::open(F, S, z, SessionMode::SharedRoot);
  SessionState rb = SessionState::open(F, S, z, SessionMode::SharedRoot);
  const InitSend init = shared_root_init_send(ra, rng);
  if (shared_root_init_receive(rb, init.message, rng).a1 != init.a1) return false;
  for (int i = 0; i < 20; ++i) {
    const StreamSend s = stream_send(ra, rng);
    if (stream_receive(rb, std::get<SharedRootStream>(decode_message(encode_message(s.message), F))) != s.y)
      return false;
  }
  return true;
}

bool check_applications(Rng& rng) {
  const FieldParams F = named_prime_field("demo10007");
  const SharedSecret S = random_secret(rng);
  const Bytes object{'i', 'b', 'c'};
  const Commitment c = commit(F, S, object, rng);
  if (!verify_commitment(F, S, object, c) || verify_commitment(F, S, Bytes{'i', 'b', 'd'}, c)) return false;
  const IssuedChallenge ch = cr_challenge(F, S, rng);
  if (!cr_check(ch.secret, cr_respond(S, ch.challenge))) return false;
  const FieldParams small = FieldParams::prime(101);
  for (int i = 0; i < 10; ++i) {
    const GeneratedPuzzle g = puzzle_make(small, rng);
    if (!puzzle_verify(g.puzzle, puzzle_solve(g.puzzle))) return false;
  }
  return true;
}

bool check_experiment(std::uint64_t seed) {
  const ExperimentReport r = indistinguishability_experiment(1009, 1000, seed);
  return r.masked_indistinguishable(0.001) && r.control_distinguished(0.001);
}

int selftest_cmd(const Options& o, std::ostream& out) {
  const std::uint64_t seed = o.seed.value_or(1);
  Rng rng(seed);
  const std::vector<std::pair<std::string, std::function<bool()>>> checks{
      {"sha256", check_sha},
      {"field", [&] { return check_field(rng); }},
      {"roots", [&] { return check_roots(rng); }},
      {"disc-scheme", [&] { return check_disc(rng); }},
      {"cross-ratio", [&] { return check_cr(rng); }},
      {"sessions", [&] { return check_sessions(rng); }},
      {"applications", [&] { return check_applications(rng); }},
      {"experiment", [&] { return check_experiment(seed); }},
  };
  json results = json::array();
  bool all = true;
  for (const auto& [name, fn] : checks) {
    bool pass = false;
    std::string error;
    try {
      pass = fn();
    } catch (const std::exception& e) {
      error = e.what();
    }
    all = all && pass;
    json entry{{"name", name}, {"pass", pass}};
    if (!error.empty()) entry["error"] = error;
    results.push_back(entry);
    if (!o.json) out << (pass ? "[PASS] " : "[FAIL] ") << name << (error.empty() ? "" : " " + error) << '\n';
  }
  if (o.json) out << json{{"seed", seed}, {"checks", results}, {"pass", all}}.dump(2) << '\n';
  return all ? kOk : kProtocolFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Invariant-based exchange demonstrations over finite fields", "ibc"};
  app.require_subcommand(1);

  const auto common = [&](CLI::App* cmd) {
    cmd->add_option("--modulus", o.modulus, "demo13 | demo10007 | p256k1 | hex prime")->capture_default_str();
    cmd->add_option("--ext", o.ext, "extension modulus coefficients, constant term first, e.g. 1,2,0,0,0,1");
    cmd->add_option("--seed", o.seed, "64-bit seed; random when omitted");
    cmd->add_option("--secret", o.secret, "32-byte shared secret in hex; derived from the seed when omitted");
    cmd->add_option("--nonce", o.nonce, "32-byte session nonce in hex; derived from the seed when omitted");
    cmd->add_flag("--json", o.json, "print a JSON transcript");
  };
  const auto tamper = [&](CLI::App* cmd) {
    cmd->add_flag("--tamper", o.tamper, "flip one payload bit of the first message in transit");
    cmd->add_option("--tamper-bit", o.tamper_bit, "payload bit to flip; defaults to the last payload byte")
        ->check(CLI::NonNegativeNumber);
  };

  auto* disc = app.add_subcommand("demo-disc", "discriminant exchange with both parties in-process");
  common(disc);
  tamper(disc);
  disc->add_flag("--auth,!--no-auth", o.auth, "attach the authentication tag")->capture_default_str();

  auto* cr = app.add_subcommand("demo-cr", "cross-ratio exchange with both parties in-process");
  common(cr);
  tamper(cr);
  cr->add_flag("--mask,!--no-mask", o.mask, "send the triple through the secret Mobius mask")->capture_default_str();
  cr->add_flag("--check,!--no-check", o.check, "attach the integrity tag")->capture_default_str();

  auto* session = app.add_subcommand("session", "session modes; messages carry no tags, so the transport must be authenticated");
  session->require_subcommand(1);
  auto* minimal = session->add_subcommand("minimal", "derived-invariant mode");
  auto* shared = session->add_subcommand("shared-root", "shared-root streaming mode");
  for (auto* cmd : {minimal, shared}) {
    common(cmd);
    tamper(cmd);
    cmd->add_option("--count", o.count, "messages to send")->capture_default_str()->check(CLI::PositiveNumber);
  }

  auto* puzzle = app.add_subcommand("puzzle", "cross-ratio puzzles; all files are JSON with hex field elements");
  puzzle->require_subcommand(1);
  auto* pmake = puzzle->add_subcommand("make", "generate a puzzle with its witness");
  common(pmake);
  pmake->add_option("--puzzle-out", o.puzzle_out, "also write the puzzle to this file");
  pmake->add_option("--witness-out", o.witness_out, "also write the witness to this file");
  auto* psolve = puzzle->add_subcommand("solve", "solve a puzzle by exhaustive search");
  common(psolve);
  psolve->add_option("--puzzle", o.puzzle_file, "puzzle file")->required();
  auto* pverify = puzzle->add_subcommand("verify", "check a witness against a puzzle");
  common(pverify);
  pverify->add_option("--puzzle", o.puzzle_file, "puzzle file")->required();
  pverify->add_option("--witness", o.witness_file, "witness file")->required();

  auto* experiment = app.add_subcommand("experiment", "masked-triple indistinguishability experiment");
  common(experiment);
  experiment->add_option("--sessions", o.sessions, "sessions per arm")->capture_default_str();
  experiment->add_option("--alpha", o.alpha, "significance level")->capture_default_str();

  auto* selftest = app.add_subcommand("selftest", "run property checks over every layer");
  selftest->add_option("--seed", o.seed, "64-bit seed; defaults to 1");
  selftest->add_flag("--json", o.json, "print a JSON report");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (disc->parsed()) return demo_disc(o, out);
    if (cr->parsed()) return demo_cr(o, out);
    if (minimal->parsed()) return session_minimal(o, out);
    if (shared->parsed()) return session_shared_root(o, out);
    if (pmake->parsed()) return puzzle_make_cmd(o, out);
    if (psolve->parsed()) return puzzle_solve_cmd(o, out);
    if (pverify->parsed()) return puzzle_verify_cmd(o, out);
    if (experiment->parsed()) return experiment_cmd(o, out);
    if (selftest->parsed()) return selftest_cmd(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kProtocolFailure;
  }
  return kUsageError;
}

}  // namespace ibc::cli
