#pragma once

#include <string>
#include <vector>

#include "cnmzk/wire.hpp"

namespace cnmzk::harness {

/// One wire frame as observed by the scheduler.
struct LogRecord {
  std::uint64_t seq = 0;
  std::string session;    // "L1", "R2", "S1", ...
  std::string direction;  // "P>A", "A>P", "A>V", "V>A", "P>V", "V>P"
  wire::MsgType type = wire::MsgType::kStart;
  Bytes frame;

  bool operator==(const LogRecord&) const = default;
};

/// {"seq":..,"session":..,"direction":..,"msg_type":..,"bytes_hex":..}
std::string to_json_line(const LogRecord& r);
std::string to_jsonl(const std::vector<LogRecord>& log);
std::vector<LogRecord> parse_jsonl(const std::string& text);

}  // namespace cnmzk::harness
