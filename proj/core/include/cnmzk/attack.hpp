#pragma once

#include <functional>

#include "cnmzk/adversary.hpp"
#include "cnmzk/event_log.hpp"

namespace cnmzk::harness {

struct AttackConfig {
  algebra::SchnorrGroupParams params = algebra::test_params();
  algebra::PairingBackend::Kind backend = algebra::PairingBackend::Kind::kSchnorr;
  commit::CommitMode mode = commit::CommitMode::kPedersen;
  std::string owf = "hash";
  std::size_t honest_verifiers = 1;
  std::size_t left_statements = 2;
  /// false disables the authenticated file channel (plain bare public-key model).
  bool apk = true;
  std::uint64_t seed = 1;
  std::size_t max_steps = 10'000;
};

struct SessionView {
  std::size_t id = 0;
  Element statement;
  std::size_t key_index = 0;
  std::optional<protocol::KeyRecord> substitute;
  /// Every frame of the session in order, both directions.
  std::vector<Frame> frames;
  /// Right sessions: verifier reached a verdict. Left: prover sent PSTEP2.
  bool finished = false;
  bool accepted = false;
};

struct View {
  std::uint64_t seed = 0;
  std::shared_ptr<const protocol::PublicFile> file;
  std::vector<SessionView> left, right;
  std::vector<LogRecord> log;
  std::vector<std::string> refusals;
  bool aborted = false;
  std::string diagnostic;
  /// Digests of every event the adversary received, in order.
  std::vector<Bytes> delivered;
};

/// Preprocessing (honest keys, left statements, adversary registration,
/// freeze), then the proof stage until EndAttack or the step budget.
View run_attack(const Adversary& prototype, const AttackConfig& cfg);

/// The right session's frames (without RESULT) equal some left session's frames.
bool q_excluded(const View& view, std::size_t right_session);

/// Right session `right_session` accepted and not Q-excluded.
bool attack_succeeded(const View& view, std::size_t right_session);

/// Fraction of `trials` runs (seeds cfg.seed, cfg.seed + 1, ...) that succeed.
double estimate_success(const Adversary& prototype, std::size_t right_session, std::size_t trials,
                        const AttackConfig& cfg);

/// Message-type sequence of the log, e.g. "L1:START R1:START ...".
std::vector<std::string> type_sequence(const View& view);

}  // namespace cnmzk::harness
