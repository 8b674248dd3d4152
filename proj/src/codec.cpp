#include "ibc/codec.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>

#include "ibc/error.hpp"

namespace ibc {

// ---------------------------------------------------------------------------
// SHA-256 over OpenSSL's EVP interface

struct Sha256::Impl {
  EVP_MD_CTX* ctx = nullptr;
};

Sha256::Sha256() : impl_(std::make_unique<Impl>()) {
  impl_->ctx = EVP_MD_CTX_new();
  if (impl_->ctx == nullptr || EVP_DigestInit_ex(impl_->ctx, EVP_sha256(), nullptr) != 1) {
    throw Error(Errc::InternalError, "cannot initialise SHA-256");
  }
}

Sha256::~Sha256() { EVP_MD_CTX_free(impl_->ctx); }

Sha256& Sha256::update(std::span<const std::uint8_t> data) {
  EVP_DigestUpdate(impl_->ctx, data.data(), data.size());
  return *this;
}

Sha256& Sha256::update(std::string_view data) {
  EVP_DigestUpdate(impl_->ctx, data.data(), data.size());
  return *this;
}

Sha256& Sha256::update_u8(std::uint8_t v) { return update(std::span<const std::uint8_t>(&v, 1)); }

Sha256& Sha256::update_u32(std::uint32_t v) {
  const std::array<std::uint8_t, 4> be{static_cast<std::uint8_t>(v >> 24), static_cast<std::uint8_t>(v >> 16),
                                       static_cast<std::uint8_t>(v >> 8), static_cast<std::uint8_t>(v)};
  return update(be);
}

Digest Sha256::finish() {
  Digest out{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(impl_->ctx, out.data(), &len);
  return out;
}

Digest sha256(std::span<const std::uint8_t> data) { return Sha256().update(data).finish(); }

// ---------------------------------------------------------------------------
// derivations

namespace {

constexpr std::array kFieldTags{tags::kT, tags::kInvariant, tags::kMask, tags::kCommit};
constexpr std::array kDigestTags{tags::kCheck, tags::kAuth, tags::kCommitContext};
constexpr int kMaskAttempts = 256;

template <std::size_t N>
void require_tag(std::string_view tag, const std::array<std::string_view, N>& registry) {
  if (std::find(registry.begin(), registry.end(), tag) == registry.end()) {
    throw Error(Errc::UnknownTag, std::string(tag));
  }
}

void absorb_parts(Sha256& h, const std::vector<Bytes>& parts) {
  for (const auto& part : parts) {
    h.update_u32(static_cast<std::uint32_t>(part.size()));
    h.update(part);
  }
}

Bytes as_bytes(std::span<const std::uint8_t> s) { return Bytes(s.begin(), s.end()); }

Bytes be32(std::uint32_t v) {
  return {static_cast<std::uint8_t>(v >> 24), static_cast<std::uint8_t>(v >> 16), static_cast<std::uint8_t>(v >> 8),
          static_cast<std::uint8_t>(v)};
}

}  // namespace

FieldElement hash_to_field(std::string_view tag, const std::vector<Bytes>& parts, const FieldParams& params,
                           Constraint constraint) {
  require_tag(tag, kFieldTags);
  const std::size_t n = params.degree();
  for (std::size_t base = 0; base + n <= 256; base += n) {
    std::vector<mpz_class> coeffs(n);
    for (std::size_t i = 0; i < n; ++i) {
      Sha256 h;
      h.update(tag).update_u8(0x00).update_u8(static_cast<std::uint8_t>(base + i));
      absorb_parts(h, parts);
      const Digest d = h.finish();
      mpz_import(coeffs[i].get_mpz_t(), d.size(), 1, 1, 1, 0, d.data());
    }
    FieldElement v = params.from_coeffs(std::move(coeffs));
    if (constraint == Constraint::Any || !v.is_zero()) return v;
  }
  throw Error(Errc::InternalError, "hash_to_field exhausted its counter");
}

Digest tagged_digest(std::string_view tag, const std::vector<Bytes>& parts) {
  require_tag(tag, kDigestTags);
  Sha256 h;
  h.update(tag).update_u8(0x00);
  absorb_parts(h, parts);
  return h.finish();
}

FieldElement derive_t(const SharedSecret& S, const Nonce& z, const FieldParams& params) {
  return hash_to_field(tags::kT, {as_bytes(S.span()), as_bytes(z.span())}, params, Constraint::Any);
}

FieldElement derive_invariant(const SharedSecret& S, const Nonce& z, const FieldParams& params) {
  return hash_to_field(tags::kInvariant, {as_bytes(S.span()), as_bytes(z.span())}, params, Constraint::Nonzero);
}

MobiusMap derive_mask(const SharedSecret& S, const Nonce& z, const FieldParams& params) {
  for (std::uint32_t attempt = 0; attempt < kMaskAttempts; ++attempt) {
    std::vector<FieldElement> abcd;
    for (std::uint8_t i = 0; i < 4; ++i) {
      abcd.push_back(hash_to_field(tags::kMask, {as_bytes(S.span()), as_bytes(z.span()), Bytes{i}, be32(attempt)},
                                   params, Constraint::Any));
    }
    if (!(abcd[0] * abcd[3] - abcd[1] * abcd[2]).is_zero()) return MobiusMap(abcd[0], abcd[1], abcd[2], abcd[3]);
  }
  throw Error(Errc::InternalError, "derive_mask found no invertible map");
}

IntegrityTag integrity_tag(TagKind kind, const SharedSecret& S, const Nonce& z, const std::vector<Bytes>& parts) {
  std::vector<Bytes> all{as_bytes(S.span()), as_bytes(z.span())};
  all.insert(all.end(), parts.begin(), parts.end());
  return IntegrityTag{tagged_digest(kind == TagKind::Check ? tags::kCheck : tags::kAuth, all)};
}

IntegrityTag integrity_tag(TagKind kind, const SharedSecret& S, const Nonce& z, std::span<const FieldElement> parts) {
  std::vector<Bytes> encoded;
  encoded.reserve(parts.size());
  for (const auto& p : parts) encoded.push_back(p.to_bytes());
  return integrity_tag(kind, S, z, encoded);
}

// ---------------------------------------------------------------------------
// wire format

MessageType type_of(const Message& m) {
  struct Visitor {
    MessageType operator()(const DiscMessage&) const { return MessageType::DiscFull; }
    MessageType operator()(const MinimalMessage&) const { return MessageType::DiscMinimal; }
    MessageType operator()(const SharedRootInit&) const { return MessageType::SharedRootInit; }
    MessageType operator()(const SharedRootStream&) const { return MessageType::SharedRootStream; }
    MessageType operator()(const CrMessage&) const { return MessageType::CrossRatio; }
  };
  return std::visit(Visitor{}, m);
}

namespace {

constexpr std::array<std::uint8_t, 4> kMagic{'I', 'B', 'C', '1'};
constexpr std::size_t kHeaderBytes = 8;

class Writer {
 public:
  void field(std::span<const std::uint8_t> data) {
    fields_.emplace_back(data.begin(), data.end());
  }
  void field(const FieldElement& v) { fields_.push_back(v.to_bytes()); }

  Bytes finish(MessageType type) const {
    Bytes out(kMagic.begin(), kMagic.end());
    out.push_back(kWireVersion);
    out.push_back(static_cast<std::uint8_t>(type));
    out.push_back(static_cast<std::uint8_t>(fields_.size() >> 8));
    out.push_back(static_cast<std::uint8_t>(fields_.size()));
    for (const auto& f : fields_) {
      const Bytes len = be32(static_cast<std::uint32_t>(f.size()));
      out.insert(out.end(), len.begin(), len.end());
      out.insert(out.end(), f.begin(), f.end());
    }
    return out;
  }

 private:
  std::vector<Bytes> fields_;
};

class Reader {
 public:
  Reader(std::vector<std::span<const std::uint8_t>> fields, const FieldParams& params)
      : fields_(std::move(fields)), params_(params) {}

  FieldElement element() { return params_.decode(next()); }

  template <typename T>
  T bytes32() {
    auto f = next();
    if (f.size() != 32) throw Error(Errc::Malformed, "expected a 32-byte field");
    return T::from_span(f);
  }

  std::size_t remaining() const { return fields_.size() - pos_; }

 private:
  std::span<const std::uint8_t> next() { return fields_.at(pos_++); }

  std::vector<std::span<const std::uint8_t>> fields_;
  const FieldParams& params_;
  std::size_t pos_ = 0;
};

void require_count(std::size_t actual, std::initializer_list<std::size_t> allowed) {
  if (std::find(allowed.begin(), allowed.end(), actual) == allowed.end()) {
    throw Error(Errc::Malformed, "unexpected field count " + std::to_string(actual));
  }
}

}  // namespace

Bytes encode_message(const Message& m) {
  Writer w;
  std::visit(
      [&w](const auto& msg) {
        using T = std::decay_t<decltype(msg)>;
        if constexpr (std::is_same_v<T, DiscMessage>) {
          w.field(msg.a2);
          w.field(msg.a3);
          w.field(msg.D);
          w.field(msg.y);
          w.field(msg.z.span());
          w.field(msg.h_check.span());
          if (msg.h_auth) w.field(msg.h_auth->span());
        } else if constexpr (std::is_same_v<T, MinimalMessage>) {
          w.field(msg.a2);
          w.field(msg.a3);
          w.field(msg.y);
        } else if constexpr (std::is_same_v<T, SharedRootInit>) {
          w.field(msg.a2);
          w.field(msg.a3);
          w.field(msg.D);
          w.field(msg.y);
        } else if constexpr (std::is_same_v<T, SharedRootStream>) {
          w.field(msg.a2);
          w.field(msg.a3);
          w.field(msg.h);
        } else {
          w.field(msg.m1);
          w.field(msg.m2);
          w.field(msg.m3);
          w.field(msg.z.span());
          if (msg.h_check) w.field(msg.h_check->span());
        }
      },
      m);
  return w.finish(type_of(m));
}

Message decode_message(std::span<const std::uint8_t> bytes, const FieldParams& params) {
  if (bytes.size() < kMagic.size()) throw Error(Errc::Truncated, "buffer shorter than the magic");
  if (!std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) throw Error(Errc::BadMagic, "expected IBC1");
  if (bytes.size() < kHeaderBytes) throw Error(Errc::Truncated, "buffer shorter than the header");
  if (bytes[4] != kWireVersion) throw Error(Errc::BadVersion, "unsupported version " + std::to_string(bytes[4]));
  const std::uint8_t type = bytes[5];
  if (type < 0x01 || type > 0x05) throw Error(Errc::UnknownType, "type byte " + std::to_string(type));
  const std::size_t count = static_cast<std::size_t>(bytes[6]) << 8 | bytes[7];

  std::vector<std::span<const std::uint8_t>> fields;
  std::size_t off = kHeaderBytes;
  for (std::size_t i = 0; i < count; ++i) {
    if (bytes.size() - off < 4) throw Error(Errc::Truncated, "missing field length");
    const std::size_t len = static_cast<std::size_t>(bytes[off]) << 24 | static_cast<std::size_t>(bytes[off + 1]) << 16 |
                            static_cast<std::size_t>(bytes[off + 2]) << 8 | bytes[off + 3];
    off += 4;
    if (bytes.size() - off < len) throw Error(Errc::Truncated, "field runs past the buffer");
    fields.push_back(bytes.subspan(off, len));
    off += len;
  }
  if (off != bytes.size()) throw Error(Errc::Malformed, "trailing bytes after the last field");

  Reader r(std::move(fields), params);
  switch (static_cast<MessageType>(type)) {
    case MessageType::DiscFull: {
      require_count(count, {6, 7});
      DiscMessage m{r.element(), r.element(), r.element(), r.element(), r.bytes32<Nonce>(), r.bytes32<IntegrityTag>(),
                    std::nullopt};
      if (r.remaining() == 1) m.h_auth = r.bytes32<IntegrityTag>();
      return m;
    }
    case MessageType::DiscMinimal:
      require_count(count, {3});
      return MinimalMessage{r.element(), r.element(), r.element()};
    case MessageType::SharedRootInit:
      require_count(count, {4});
      return SharedRootInit{r.element(), r.element(), r.element(), r.element()};
    case MessageType::SharedRootStream:
      require_count(count, {3});
      return SharedRootStream{r.element(), r.element(), r.element()};
    case MessageType::CrossRatio: {
      require_count(count, {4, 5});
      CrMessage m{r.element(), r.element(), r.element(), r.bytes32<Nonce>(), std::nullopt};
      if (r.remaining() == 1) m.h_check = r.bytes32<IntegrityTag>();
      return m;
    }
  }
  throw Error(Errc::UnknownType, "type byte " + std::to_string(type));
}

}  // namespace ibc
