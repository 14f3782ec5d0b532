#include "cnmzk/wire.hpp"

#include "cnmzk/codec.hpp"

namespace cnmzk::wire {

std::string_view to_string(MsgType t) {
  switch (t) {
    case MsgType::kStart: return "START";
    case MsgType::kVStep1: return "VSTEP1";
    case MsgType::kPStep1: return "PSTEP1";
    case MsgType::kVStep2: return "VSTEP2";
    case MsgType::kPStep2: return "PSTEP2";
    case MsgType::kResult: return "RESULT";
  }
  return "?";
}

MsgType parse_msg_type(std::string_view name) {
  for (int i = 1; i <= 6; ++i) {
    const auto t = static_cast<MsgType>(i);
    if (to_string(t) == name) return t;
  }
  throw DecodeError("unknown message type: " + std::string(name));
}

namespace {

MsgType checked_type(std::uint8_t raw) {
  if (raw < 1 || raw > 6) throw DecodeError("unknown message type tag");
  return static_cast<MsgType>(raw);
}

}  // namespace

Bytes Frame::encode() const {
  if (payload.size() + 1 > kMaxFrameBody) throw DecodeError("frame too large");
  Writer w;
  w.u32(static_cast<std::uint32_t>(payload.size() + 1)).u8(static_cast<std::uint8_t>(type)).raw(payload);
  return std::move(w).bytes();
}

Frame Frame::decode(std::span<const std::uint8_t> bytes) {
  Reader in(bytes);
  const std::uint32_t len = in.u32();
  if (len == 0 || len > kMaxFrameBody) throw DecodeError("frame length out of range");
  Frame f;
  f.type = checked_type(in.u8());
  auto body = in.raw(len - 1);
  f.payload.assign(body.begin(), body.end());
  in.expect_end();
  return f;
}

void FrameBuffer::feed(std::span<const std::uint8_t> bytes) { buf_.insert(buf_.end(), bytes.begin(), bytes.end()); }

std::optional<Frame> FrameBuffer::next() {
  if (buf_.size() < 4) return std::nullopt;
  const std::uint32_t len = std::uint32_t{buf_[0]} << 24 | std::uint32_t{buf_[1]} << 16 |
                            std::uint32_t{buf_[2]} << 8 | buf_[3];
  if (len == 0 || len > kMaxFrameBody) throw DecodeError("frame length out of range");
  if (buf_.size() < 4 + static_cast<std::size_t>(len)) return std::nullopt;
  Frame f = Frame::decode(std::span(buf_).first(4 + len));
  buf_.erase(buf_.begin(), buf_.begin() + 4 + len);
  return f;
}

}  // namespace cnmzk::wire
