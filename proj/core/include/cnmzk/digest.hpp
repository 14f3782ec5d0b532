#pragma once

#include <memory>
#include <span>
#include <string>

#include "cnmzk/error.hpp"

namespace cnmzk {

/// 256-bit collision-resistant digest.
class Digest {
 public:
  virtual ~Digest() = default;
  virtual Bytes hash(std::span<const std::uint8_t> data) const = 0;
  virtual std::string name() const = 0;
};

class Sha256Digest final : public Digest {
 public:
  Bytes hash(std::span<const std::uint8_t> data) const override;
  std::string name() const override { return "sha256"; }
};

const Digest& default_digest();

}  // namespace cnmzk
