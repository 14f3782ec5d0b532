#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "cnmzk/algebra.hpp"
#include "cnmzk/error.hpp"

namespace cnmzk {

/// Big-endian, zero-padded to exactly `width` bytes. Throws if v does not fit.
Bytes encode_fixed(const mpz_class& v, std::size_t width);
mpz_class decode_fixed(std::span<const std::uint8_t> bytes);

std::string to_hex(std::span<const std::uint8_t> bytes);
Bytes from_hex(std::string_view hex);

class Writer {
 public:
  Writer& u8(std::uint8_t v);
  Writer& u16(std::uint16_t v);
  Writer& u32(std::uint32_t v);
  Writer& raw(std::span<const std::uint8_t> b);
  /// u32 length prefix, then the bytes.
  Writer& blob(std::span<const std::uint8_t> b);
  Writer& element(const algebra::Element& e) { return raw(e.encode()); }
  Writer& scalar(const algebra::Scalar& s) { return raw(s.encode()); }

  const Bytes& bytes() const& { return out_; }
  Bytes bytes() && { return std::move(out_); }

 private:
  Bytes out_;
};

/// Cursor over untrusted input. Every read throws DecodeError on truncation,
/// foreign tags, non-members or out-of-range scalars.
class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  std::uint8_t u8();
  std::uint16_t u16();
  std::uint32_t u32();
  std::span<const std::uint8_t> raw(std::size_t n);
  Bytes blob();
  algebra::Element element(const algebra::Group& group);
  algebra::Scalar scalar(const algebra::Modulus& q);

  std::size_t remaining() const { return in_.size() - pos_; }
  bool done() const { return remaining() == 0; }
  void expect_end() const;

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

}  // namespace cnmzk
