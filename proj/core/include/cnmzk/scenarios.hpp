#pragma once

// Bundled adversaries. Each is deterministic given its random tape.
//
//   null             ends immediately
//   relay            copies one left session into one right session verbatim
//   maul             relay that flips one random payload bit of PSTEP1 or PSTEP2
//   knowledgeable    proves its own statement in one right session
//   wrapped          registers a key; 2 left sessions under that key and 2 right
//                    sessions on statements it knows, nested schedule
//   self_register    registers a key and runs one left session to completion
//   bpk_substitution asks the prover to use an unregistered key it controls

#include <memory>
#include <string_view>
#include <vector>

#include "cnmzk/adversary.hpp"

namespace cnmzk::harness {

std::vector<std::string> scenario_names();

/// Throws Error for an unknown name.
std::unique_ptr<Adversary> make_scenario(std::string_view name);

/// Right session the scenario attacks (1-based), 0 when it opens none.
std::size_t scenario_target(std::string_view name);

}  // namespace cnmzk::harness
