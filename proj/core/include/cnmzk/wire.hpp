#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "cnmzk/error.hpp"

namespace cnmzk::wire {

enum class MsgType : std::uint8_t {
  kStart = 1,
  kVStep1 = 2,
  kPStep1 = 3,
  kVStep2 = 4,
  kPStep2 = 5,
  kResult = 6,
};

std::string_view to_string(MsgType t);
MsgType parse_msg_type(std::string_view name);

inline constexpr std::uint32_t kMaxFrameBody = 1u << 24;

/// u32 big-endian length of (type + payload), u8 type, payload.
struct Frame {
  MsgType type = MsgType::kStart;
  Bytes payload;

  Bytes encode() const;
  /// Exactly one frame; throws DecodeError otherwise.
  static Frame decode(std::span<const std::uint8_t> bytes);
  bool operator==(const Frame&) const = default;
};

/// Incremental decoder for a byte stream.
class FrameBuffer {
 public:
  void feed(std::span<const std::uint8_t> bytes);
  std::optional<Frame> next();

 private:
  Bytes buf_;
};

}  // namespace cnmzk::wire
