#pragma once

#include <string>
#include <vector>

#include "cnmzk/session.hpp"

namespace golden {

struct Case {
  std::string file;
  cnmzk::SessionOptions opts;
};

/// Seeds 1..5 in each commitment mode; schnorr backend, desk parameters.
inline std::vector<Case> cases() {
  std::vector<Case> out;
  for (auto mode : {cnmzk::commit::CommitMode::kPedersen, cnmzk::commit::CommitMode::kElGamal}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      cnmzk::SessionOptions o;
      o.mode = mode;
      o.seed = seed;
      out.push_back({std::string(cnmzk::commit::to_string(mode)) + "_seed" + std::to_string(seed) + ".jsonl", o});
    }
  }
  return out;
}

}  // namespace golden
