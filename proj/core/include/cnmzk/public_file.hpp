#pragma once

#include <string>
#include <vector>

#include "cnmzk/signatures.hpp"

namespace cnmzk::protocol {

enum class Owner { kHonest, kAdversary };

std::string_view to_string(Owner o);

struct KeyRecord {
  std::size_t index = 0;  // 1-based position in the file
  sig::BBVerKey vk0, vk1;
  Owner owner = Owner::kHonest;
  std::string owner_id;

  const sig::BBVerKey& vk(int bit) const { return bit == 0 ? vk0 : vk1; }
};

/// The registry of verifier keys. Append-only until frozen.
class PublicFile {
 public:
  PublicFile() = default;
  explicit PublicFile(algebra::Suite suite) : suite_(std::move(suite)) {}

  /// Throws ProtocolError after freeze or on malformed keys. Returns the index.
  std::size_t add(const sig::BBVerKey& vk0, const sig::BBVerKey& vk1, Owner owner, std::string owner_id);
  void freeze() { frozen_ = true; }
  bool frozen() const { return frozen_; }

  std::size_t size() const { return records_.size(); }
  bool contains(std::size_t index) const { return index >= 1 && index <= records_.size(); }
  /// Throws ProtocolError for an unknown index.
  const KeyRecord& at(std::size_t index) const;
  const std::vector<KeyRecord>& records() const { return records_; }
  const algebra::Suite& suite() const { return suite_; }

  /// Self-describing JSON: suite parameters, backend, frozen flag, records.
  std::string to_json() const;
  static PublicFile from_json(const std::string& text);

 private:
  algebra::Suite suite_;
  std::vector<KeyRecord> records_;
  bool frozen_ = false;
};

/// {"vk0": {...}, "vk1": {...}} with hex-encoded elements.
std::string keys_to_json(const sig::BBVerKey& vk0, const sig::BBVerKey& vk1);
std::pair<sig::BBVerKey, sig::BBVerKey> keys_from_json(const algebra::Suite& suite, const std::string& text);

}  // namespace cnmzk::protocol
