#include "cnmzk/digest.hpp"

#include <openssl/sha.h>

namespace cnmzk {

Bytes Sha256Digest::hash(std::span<const std::uint8_t> data) const {
  Bytes out(SHA256_DIGEST_LENGTH);
  SHA256(data.data(), data.size(), out.data());
  return out;
}

const Digest& default_digest() {
  static const Sha256Digest digest;
  return digest;
}

}  // namespace cnmzk
