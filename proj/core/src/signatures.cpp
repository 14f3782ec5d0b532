#include "cnmzk/signatures.hpp"

#include "cnmzk/codec.hpp"

namespace cnmzk::sig {
namespace {

Scalar draw_nonzero(const algebra::Modulus& q, Rng& rng) {
  for (;;) {
    Scalar x = Scalar::random(q, rng);
    if (!x.is_zero()) return x;
  }
}

}  // namespace

// ---------------------------------------------------------------- Boneh-Boyen

bool BBVerKey::well_formed(const PairingBackend& backend) const {
  try {
    if (!g1.valid() || !g2.valid() || !u.valid() || !v.valid() || !z.valid()) return false;
    if (g1 != backend.g1()->generator() || g2 != backend.g2()->generator()) return false;
    if (!u.group()->same_as(*backend.g2()) || !v.group()->same_as(*backend.g2())) return false;
    if (u.is_identity() || v.is_identity()) return false;
    return z == backend.pair(g1, g2);
  } catch (const Error&) {
    return false;
  }
}

Bytes BBVerKey::encode() const {
  Writer w;
  w.element(g1).element(g2).element(u).element(v).element(z);
  return std::move(w).bytes();
}

BBKeypair bb_keygen(const PairingBackend& backend, Rng& rng) {
  const Scalar x = draw_nonzero(backend.g1()->order_ptr(), rng);
  const Scalar y = draw_nonzero(backend.g1()->order_ptr(), rng);
  return bb_keypair_from(backend, x, y);
}

BBKeypair bb_keypair_from(const PairingBackend& backend, const Scalar& x, const Scalar& y) {
  if (x.is_zero() || y.is_zero()) throw AlgebraError("signing key components must be nonzero");
  const Element g1 = backend.g1()->generator();
  const Element g2 = backend.g2()->generator();
  return {{g1, g2, g2.pow(x), g2.pow(y), backend.pair(g1, g2)}, {x, y}};
}

bool bb_key_matches(const BBVerKey& vk, const BBSigKey& sk) {
  try {
    return vk.g2.pow(sk.x) == vk.u && vk.g2.pow(sk.y) == vk.v;
  } catch (const Error&) {
    return false;
  }
}

BBSignature bb_sign(const PairingBackend& backend, const BBSigKey& sk, const Scalar& m, Rng& rng) {
  if (m.is_zero()) throw AlgebraError("message must lie in Zq*");
  for (int attempt = 0; attempt < kBBSignAttempts; ++attempt) {
    const Scalar r = draw_nonzero(backend.g1()->order_ptr(), rng);
    if (!(sk.x + m + sk.y * r).is_zero()) return bb_sign_with(backend, sk, m, r);
  }
  throw AlgebraError("bb_sign: retry bound exhausted");
}

BBSignature bb_sign_with(const PairingBackend& backend, const BBSigKey& sk, const Scalar& m, const Scalar& r) {
  const Scalar denom = sk.x + m + sk.y * r;
  if (denom.is_zero()) throw AlgebraError("bb_sign: x + m + y r vanishes");
  return {backend.g1()->generator().pow(denom.inverse()), r};
}

bool bb_verify(const PairingBackend& backend, const BBVerKey& vk, const Scalar& m, const BBSignature& sig) {
  try {
    if (!sig.sigma.valid() || !sig.sigma.group()->same_as(*backend.g1())) return false;
    const Element base = vk.u * vk.g2.pow(m) * vk.v.pow(sig.r);
    return backend.pair(sig.sigma, base) == vk.z;
  } catch (const Error&) {
    return false;
  }
}

Scalar message_to_scalar(std::span<const std::uint8_t> message, const algebra::Modulus& q, const Digest& digest) {
  if (*q <= 2) throw AlgebraError("modulus too small");
  const mpz_class h = decode_fixed(digest.hash(message));
  mpz_class reduced;
  const mpz_class qm1 = *q - 1;
  mpz_mod(reduced.get_mpz_t(), h.get_mpz_t(), qm1.get_mpz_t());
  return Scalar(q, reduced + 1);
}

Scalar ceil_repr(const Element& sigma, const algebra::Modulus& q) { return Scalar(q, sigma.to_integer()); }

// ---------------------------------------------------------------- one-way functions

std::size_t ExponentOneWay::preimage_width() const { return algebra::byte_width(group_->order()); }

Bytes ExponentOneWay::random_preimage(Rng& rng) const { return group_->random_scalar(rng).encode(); }

Bytes ExponentOneWay::eval(std::span<const std::uint8_t> preimage) const {
  if (preimage.size() != preimage_width()) throw DecodeError("preimage width mismatch");
  Reader in(preimage);
  const Scalar x = in.scalar(group_->order_ptr());
  return group_->generator().pow(x).encode();
}

Bytes HashOneWay::eval(std::span<const std::uint8_t> preimage) const {
  if (preimage.size() != preimage_width()) throw DecodeError("preimage width mismatch");
  return Sha256Digest().hash(preimage);
}

OneWayPtr make_one_way(std::string_view name, const algebra::GroupPtr& group) {
  if (name == "hash") return std::make_shared<HashOneWay>();
  if (name == "exp") return std::make_shared<ExponentOneWay>(group);
  throw Error("unknown one-way function: " + std::string(name));
}

// ---------------------------------------------------------------- Lamport

Bytes OtsPublicKey::serialize() const {
  Writer w;
  w.u32(length);
  const std::size_t width = images.empty() ? 0 : images.front().size();
  w.u16(static_cast<std::uint16_t>(width));
  for (const Bytes& y : images) {
    if (y.size() != width) throw Error("ragged one-time public key");
    w.raw(y);
  }
  return std::move(w).bytes();
}

OtsPublicKey OtsPublicKey::parse(std::span<const std::uint8_t> bytes, const OneWayFunction& f) {
  Reader in(bytes);
  OtsPublicKey out;
  out.length = in.u32();
  if (out.length == 0 || out.length > 4096) throw DecodeError("one-time key length out of range");
  if (in.u16() != f.image_width()) throw DecodeError("one-time key image width mismatch");
  out.images.reserve(2 * out.length);
  for (std::uint32_t i = 0; i < 2 * out.length; ++i) {
    auto y = in.raw(f.image_width());
    out.images.emplace_back(y.begin(), y.end());
  }
  in.expect_end();
  return out;
}

Bytes OneTimeSignature::encode() const {
  Writer w;
  w.u32(static_cast<std::uint32_t>(reveals.size()));
  const std::size_t width = reveals.empty() ? 0 : reveals.front().size();
  w.u16(static_cast<std::uint16_t>(width));
  for (const Bytes& x : reveals) w.raw(x);
  return std::move(w).bytes();
}

OneTimeSignature OneTimeSignature::decode(Reader& in, const OneWayFunction& f) {
  OneTimeSignature out;
  const std::uint32_t n = in.u32();
  if (n > 4096) throw DecodeError("one-time signature too long");
  if (in.u16() != f.preimage_width()) throw DecodeError("one-time signature width mismatch");
  out.reveals.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    auto x = in.raw(f.preimage_width());
    out.reveals.emplace_back(x.begin(), x.end());
  }
  return out;
}

OneTimeKeypair ots_keygen(OneWayPtr f, std::uint32_t length, Rng& rng) {
  if (length == 0) throw Error("one-time key length must be positive");
  std::vector<Bytes> secret;
  secret.reserve(2 * length);
  for (std::uint32_t i = 0; i < 2 * length; ++i) secret.push_back(f->random_preimage(rng));
  return ots_keypair_from(std::move(f), std::move(secret));
}

OneTimeKeypair ots_keypair_from(OneWayPtr f, std::vector<Bytes> secret) {
  if (secret.empty() || secret.size() % 2 != 0) throw Error("one-time secret needs 2L entries");
  OneTimeKeypair kp;
  kp.pub.length = static_cast<std::uint32_t>(secret.size() / 2);
  kp.pub.images.reserve(secret.size());
  for (const Bytes& x : secret) kp.pub.images.push_back(f->eval(x));
  kp.f = std::move(f);
  kp.secret = std::move(secret);
  return kp;
}

std::vector<bool> digest_bits(std::span<const std::uint8_t> message, std::uint32_t length, const Digest& digest) {
  const Bytes d = digest.hash(message);
  if (length > d.size() * 8) throw Error("one-time key longer than the digest");
  std::vector<bool> bits(length);
  for (std::uint32_t i = 0; i < length; ++i) bits[i] = (d[i / 8] >> (7 - i % 8)) & 1;
  return bits;
}

OneTimeSignature ots_sign(OneTimeKeypair& kp, std::span<const std::uint8_t> message, const Digest& digest) {
  return ots_sign_bits(kp, digest_bits(message, kp.pub.length, digest));
}

OneTimeSignature ots_sign_bits(OneTimeKeypair& kp, const std::vector<bool>& bits) {
  if (kp.used) throw ProtocolError("one-time key already used");
  if (bits.size() != kp.pub.length) throw Error("bit string length mismatch");
  kp.used = true;
  OneTimeSignature sig;
  sig.reveals.reserve(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) sig.reveals.push_back(kp.secret[2 * i + (bits[i] ? 1 : 0)]);
  return sig;
}

bool ots_verify(const OneWayFunction& f, const OtsPublicKey& pub, std::span<const std::uint8_t> message,
                const OneTimeSignature& sig, const Digest& digest) {
  try {
    return ots_verify_bits(f, pub, digest_bits(message, pub.length, digest), sig);
  } catch (const Error&) {
    return false;
  }
}

bool ots_verify_bits(const OneWayFunction& f, const OtsPublicKey& pub, const std::vector<bool>& bits,
                     const OneTimeSignature& sig) {
  if (bits.size() != pub.length || sig.reveals.size() != pub.length || pub.images.size() != 2 * pub.length) {
    return false;
  }
  try {
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (f.eval(sig.reveals[i]) != pub.images[2 * i + (bits[i] ? 1 : 0)]) return false;
    }
    return true;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace cnmzk::sig
