#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "cnmzk/algebra.hpp"
#include "cnmzk/codec.hpp"
#include "cnmzk/digest.hpp"

namespace cnmzk::sig {

using algebra::Element;
using algebra::PairingBackend;
using algebra::Scalar;

// ---------------------------------------------------------------- Boneh-Boyen

struct BBVerKey {
  Element g1, g2, u, v, z;

  /// z = e(g1, g2), u and v not the identity, generators match the backend.
  bool well_formed(const PairingBackend& backend) const;
  Bytes encode() const;
  bool operator==(const BBVerKey&) const = default;
};

struct BBSigKey {
  Scalar x, y;
};

struct BBSignature {
  Element sigma;
  Scalar r;
};

struct BBKeypair {
  BBVerKey vk;
  BBSigKey sk;
};

inline constexpr int kBBSignAttempts = 64;

BBKeypair bb_keygen(const PairingBackend& backend, Rng& rng);
/// Builds the key pair for given (x, y); both must be nonzero.
BBKeypair bb_keypair_from(const PairingBackend& backend, const Scalar& x, const Scalar& y);
bool bb_key_matches(const BBVerKey& vk, const BBSigKey& sk);

/// sigma = g1^(1/(x + m + y r)), r <- Zq*, retried while the denominator vanishes.
BBSignature bb_sign(const PairingBackend& backend, const BBSigKey& sk, const Scalar& m, Rng& rng);
BBSignature bb_sign_with(const PairingBackend& backend, const BBSigKey& sk, const Scalar& m, const Scalar& r);
bool bb_verify(const PairingBackend& backend, const BBVerKey& vk, const Scalar& m, const BBSignature& sig);

/// Maps arbitrary bytes into Zq*: digest as a big-endian integer mod (q - 1), plus one.
Scalar message_to_scalar(std::span<const std::uint8_t> message, const algebra::Modulus& q,
                         const Digest& digest = default_digest());

/// Integer representation of a G1 element reduced into Zq.
Scalar ceil_repr(const Element& sigma, const algebra::Modulus& q);

// ---------------------------------------------------------------- Lamport

/// Injective one-way function on fixed-width byte strings.
class OneWayFunction {
 public:
  virtual ~OneWayFunction() = default;
  virtual std::string name() const = 0;
  virtual std::size_t preimage_width() const = 0;
  virtual std::size_t image_width() const = 0;
  virtual Bytes random_preimage(Rng& rng) const = 0;
  /// Throws DecodeError on a malformed preimage.
  virtual Bytes eval(std::span<const std::uint8_t> preimage) const = 0;
};

using OneWayPtr = std::shared_ptr<const OneWayFunction>;

/// f(x) = g^x over a prime-order group; preimages are scalar encodings.
class ExponentOneWay final : public OneWayFunction {
 public:
  explicit ExponentOneWay(algebra::GroupPtr group) : group_(std::move(group)) {}
  std::string name() const override { return "exp"; }
  std::size_t preimage_width() const override;
  std::size_t image_width() const override { return 1 + group_->width(); }
  Bytes random_preimage(Rng& rng) const override;
  Bytes eval(std::span<const std::uint8_t> preimage) const override;

  Bytes preimage_of(const Scalar& x) const { return x.encode(); }

 private:
  algebra::GroupPtr group_;
};

/// f(x) = SHA-256(x) on 32-byte preimages.
class HashOneWay final : public OneWayFunction {
 public:
  std::string name() const override { return "hash"; }
  std::size_t preimage_width() const override { return 32; }
  std::size_t image_width() const override { return 32; }
  Bytes random_preimage(Rng& rng) const override { return rng.bytes(32); }
  Bytes eval(std::span<const std::uint8_t> preimage) const override;
};

OneWayPtr make_one_way(std::string_view name, const algebra::GroupPtr& group);

struct OtsPublicKey {
  std::uint32_t length = 0;  // L
  std::vector<Bytes> images;  // y_{i,b} at index 2i + b

  /// u32 L, u16 image width, then the 2L images in index order.
  Bytes serialize() const;
  static OtsPublicKey parse(std::span<const std::uint8_t> bytes, const OneWayFunction& f);
  bool operator==(const OtsPublicKey&) const = default;
};

struct OneTimeKeypair {
  OneWayPtr f;
  std::vector<Bytes> secret;  // x_{i,b} at index 2i + b
  OtsPublicKey pub;
  bool used = false;
};

struct OneTimeSignature {
  std::vector<Bytes> reveals;

  Bytes encode() const;
  static OneTimeSignature decode(Reader& in, const OneWayFunction& f);
  bool operator==(const OneTimeSignature&) const = default;
};

OneTimeKeypair ots_keygen(OneWayPtr f, std::uint32_t length, Rng& rng);
OneTimeKeypair ots_keypair_from(OneWayPtr f, std::vector<Bytes> secret);

/// The first L bits of digest(message), most significant bit first.
std::vector<bool> digest_bits(std::span<const std::uint8_t> message, std::uint32_t length,
                              const Digest& digest = default_digest());

/// Marks the key used; a second call throws ProtocolError.
OneTimeSignature ots_sign(OneTimeKeypair& kp, std::span<const std::uint8_t> message,
                          const Digest& digest = default_digest());
OneTimeSignature ots_sign_bits(OneTimeKeypair& kp, const std::vector<bool>& bits);

bool ots_verify(const OneWayFunction& f, const OtsPublicKey& pub, std::span<const std::uint8_t> message,
                const OneTimeSignature& sig, const Digest& digest = default_digest());
bool ots_verify_bits(const OneWayFunction& f, const OtsPublicKey& pub, const std::vector<bool>& bits,
                     const OneTimeSignature& sig);

}  // namespace cnmzk::sig
