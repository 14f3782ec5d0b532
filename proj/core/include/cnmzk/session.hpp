#pragma once

// One honest prover/verifier session driven in process, with cost accounting.

#include "cnmzk/event_log.hpp"
#include "cnmzk/protocol.hpp"

namespace cnmzk {

struct SessionOptions {
  algebra::SchnorrGroupParams params = algebra::test_params();
  algebra::PairingBackend::Kind backend = algebra::PairingBackend::Kind::kSchnorr;
  commit::CommitMode mode = commit::CommitMode::kPedersen;
  std::string owf = "hash";
  std::uint64_t seed = 1;
};

/// Everything derived from the seed before the first message.
struct SessionSetup {
  protocol::Config cfg;
  std::shared_ptr<const protocol::PublicFile> file;
  protocol::VerifierKeys keys;
  algebra::Scalar w;
  algebra::Element x;
  std::uint64_t prover_seed = 0;
  std::uint64_t verifier_seed = 0;
};

SessionSetup prepare_session(const SessionOptions& opts);

struct SessionOutcome {
  bool accepted = false;
  std::string reject_reason;
  algebra::Element x;
  /// Session "S1", directions "P>V" and "V>P".
  std::vector<harness::LogRecord> log;
  algebra::OpCounts prover, verifier;
  /// Frames exchanged after START, RESULT excluded.
  std::size_t messages_after_start = 0;
};

SessionOutcome run_session(const SessionOptions& opts);

/// Feeds the logged prover frames to a freshly seeded verifier and checks
/// that every verifier frame it produces equals the logged one.
bool replay_session(const SessionOptions& opts, const std::vector<harness::LogRecord>& log);

}  // namespace cnmzk
