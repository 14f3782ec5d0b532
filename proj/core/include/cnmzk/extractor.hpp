#pragma once

// The rewinding extractor E and the predicate rho.
//
// E replays the adversary's preprocessing with the same seed but keeps both
// signing keys of every honest verifier. Left sessions are answered on the
// signature branch of Pi_p. Sessions under a key E does not know get a
// witness-free placeholder PSTEP1; when their VSTEP2 arrives, E rewinds the
// adversary to the placeholder's VSTEP1 with a fresh Pi_v challenge, extracts
// the signing key from the two Pi_v conversations, and then resets to the
// same point and answers with a real PSTEP1. When the target right session
// accepts, E rewinds to its PSTEP1 with a fresh Pi_p challenge and hands the
// two Pi_p conversations to rho.

#include <optional>

#include "cnmzk/attack.hpp"

namespace cnmzk::harness {

enum class Outcome { kFailure, kEvent1, kEvent2 };

std::string_view to_string(Outcome o);

struct ExtractorConfig {
  AttackConfig attack;
  std::size_t target = 1;
  /// Rewinds allowed per extraction point.
  std::size_t max_rewinds = 64;
  /// Total adversary steps across the forward run and every rewind.
  std::size_t step_budget = 200'000;
};

struct ExtractionStats {
  std::size_t key_rewinds = 0;
  std::size_t witness_rewinds = 0;
  std::size_t resets = 0;
  std::size_t steps = 0;
};

struct RecoveredKey {
  std::size_t index = 0;
  int bit = 0;
  sig::BBSigKey sk;
};

struct RhoResult {
  Outcome outcome = Outcome::kFailure;
  std::string failure;
  std::size_t branch = 0;
  std::optional<algebra::Scalar> witness;
  std::optional<sigma::SignatureWitness> opening;
};

/// Special-soundness extraction on Pi_p, then classification. Event 1 is
/// returned only for w with g^w = x; Event 2 only for an opening of C to a
/// signature on m that verifies under vk0 or vk1.
RhoResult predicate_rho(const protocol::Config& cfg, const protocol::KeyRecord& key, const Element& x,
                        const commit::PairCommitment& com, const algebra::Scalar& m, const sigma::Transcript& t1,
                        const sigma::Transcript& t2);

struct ExtractionResult {
  Outcome outcome = Outcome::kFailure;
  std::string failure;
  std::size_t branch = 0;
  std::optional<algebra::Scalar> witness;
  std::optional<sigma::SignatureWitness> opening;
  Element statement;
  /// The two accepting Pi_p conversations of the target session.
  std::vector<sigma::Transcript> conversations;
  ExtractionStats stats;
  std::vector<RecoveredKey> recovered;
  /// The adversary's forward view at the end of the run.
  View view;
  /// Every event the adversary holds came from the forward run.
  bool reset_discipline_ok = false;
  /// 2^-l plus the observed rewind-failure rate.
  double knowledge_error = 0;
};

ExtractionResult run_extractor(const Adversary& prototype, const ExtractorConfig& cfg);

}  // namespace cnmzk::harness
