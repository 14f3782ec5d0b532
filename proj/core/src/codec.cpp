#include "cnmzk/codec.hpp"

namespace cnmzk {

Bytes encode_fixed(const mpz_class& v, std::size_t width) {
  if (v < 0) throw AlgebraError("cannot encode a negative integer");
  const std::size_t need = v == 0 ? 0 : (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8;
  if (need > width) throw AlgebraError("integer does not fit the encoding width");
  Bytes out(width, 0);
  if (need > 0) {
    std::size_t written = 0;
    mpz_export(out.data() + (width - need), &written, 1, 1, 1, 0, v.get_mpz_t());
  }
  return out;
}

mpz_class decode_fixed(std::span<const std::uint8_t> bytes) {
  mpz_class v;
  if (!bytes.empty()) mpz_import(v.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
  return v;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0x0f]);
  }
  return out;
}

Bytes from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw DecodeError("odd-length hex string");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw DecodeError("invalid hex digit");
  };
  Bytes out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
  }
  return out;
}

Writer& Writer::u8(std::uint8_t v) {
  out_.push_back(v);
  return *this;
}

Writer& Writer::u16(std::uint16_t v) {
  out_.push_back(static_cast<std::uint8_t>(v >> 8));
  out_.push_back(static_cast<std::uint8_t>(v));
  return *this;
}

Writer& Writer::u32(std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) out_.push_back(static_cast<std::uint8_t>(v >> shift));
  return *this;
}

Writer& Writer::raw(std::span<const std::uint8_t> b) {
  out_.insert(out_.end(), b.begin(), b.end());
  return *this;
}

Writer& Writer::blob(std::span<const std::uint8_t> b) {
  if (b.size() > UINT32_MAX) throw DecodeError("blob too large");
  u32(static_cast<std::uint32_t>(b.size()));
  return raw(b);
}

std::span<const std::uint8_t> Reader::raw(std::size_t n) {
  if (n > remaining()) throw DecodeError("truncated input");
  auto out = in_.subspan(pos_, n);
  pos_ += n;
  return out;
}

std::uint8_t Reader::u8() { return raw(1)[0]; }

std::uint16_t Reader::u16() {
  auto b = raw(2);
  return static_cast<std::uint16_t>(b[0] << 8 | b[1]);
}

std::uint32_t Reader::u32() {
  auto b = raw(4);
  return std::uint32_t{b[0]} << 24 | std::uint32_t{b[1]} << 16 | std::uint32_t{b[2]} << 8 | b[3];
}

Bytes Reader::blob() {
  const std::uint32_t n = u32();
  auto b = raw(n);
  return Bytes(b.begin(), b.end());
}

algebra::Element Reader::element(const algebra::Group& group) {
  const std::uint8_t tag = u8();
  if (tag != static_cast<std::uint8_t>(group.tag())) {
    throw DecodeError("expected a " + std::string(algebra::to_string(group.tag())) + " element");
  }
  const mpz_class v = decode_fixed(raw(group.width()));
  if (!group.contains(v)) throw DecodeError("encoded value is not a group member");
  return group.element(v);
}

algebra::Scalar Reader::scalar(const algebra::Modulus& q) {
  const mpz_class v = decode_fixed(raw(algebra::byte_width(*q)));
  if (v >= *q) throw DecodeError("scalar out of range");
  return algebra::Scalar(q, v);
}

void Reader::expect_end() const {
  if (!done()) throw DecodeError("trailing bytes");
}

}  // namespace cnmzk
