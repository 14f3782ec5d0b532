#include "cnmzk/event_log.hpp"

#include <sstream>

#include "cnmzk/codec.hpp"
#include "json.hpp"

namespace cnmzk::harness {

std::string to_json_line(const LogRecord& r) {
  nlohmann::ordered_json j;
  j["seq"] = r.seq;
  j["session"] = r.session;
  j["direction"] = r.direction;
  j["msg_type"] = std::string(wire::to_string(r.type));
  j["bytes_hex"] = to_hex(r.frame);
  return j.dump();
}

std::string to_jsonl(const std::vector<LogRecord>& log) {
  std::string out;
  for (const LogRecord& r : log) out += to_json_line(r) + "\n";
  return out;
}

std::vector<LogRecord> parse_jsonl(const std::string& text) {
  std::vector<LogRecord> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      LogRecord r;
      r.seq = j.at("seq").get<std::uint64_t>();
      r.session = j.at("session").get<std::string>();
      r.direction = j.at("direction").get<std::string>();
      r.type = wire::parse_msg_type(j.at("msg_type").get<std::string>());
      r.frame = from_hex(j.at("bytes_hex").get<std::string>());
      if (wire::Frame::decode(r.frame).type != r.type) throw DecodeError("msg_type disagrees with the frame");
      out.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw DecodeError(std::string("event log: ") + e.what());
    }
  }
  return out;
}

}  // namespace cnmzk::harness
