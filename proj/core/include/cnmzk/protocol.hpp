#pragma once

// Prover and verifier as message-driven state machines.
//
//   START   P -> V   x, u32 key index
//   VSTEP1  V -> P   first message of Pi_v, then f (h in Pedersen mode, empty otherwise)
//   PSTEP1  P -> V   blob(vk'), commitment C, first message of Pi_p, Pi_v challenge
//   VSTEP2  V -> P   Pi_v response, Pi_p challenge
//   PSTEP2  P -> V   blob(Pi_p response), one-time signature over tran
//   RESULT  V -> *   one byte, 1 = accept
//
// Pi_v: OR of two dl_pair statements, one per verification key.
// Pi_p: OR of [x = g^w, C opens to a signature on vk' under vk0, same under vk1].
// tran: the frames START, VSTEP1, PSTEP1, VSTEP2 exactly as sent, followed by
//       blob(Pi_p response).

#include <memory>
#include <optional>
#include <variant>

#include "cnmzk/public_file.hpp"
#include "cnmzk/sigstmt.hpp"
#include "cnmzk/wire.hpp"

namespace cnmzk::protocol {

using algebra::Element;
using algebra::Scalar;
using wire::Frame;
using wire::MsgType;

enum class RoundMode { kNumberTheoretic, kGeneric };

/// Messages exchanged after START: 4 in number-theoretic mode, 5 reserved for
/// the generic instantiation.
int message_count(RoundMode mode);

struct Config {
  algebra::Suite suite;
  commit::CommitMode mode = commit::CommitMode::kPedersen;
  sig::OneWayPtr owf;
  std::uint32_t ots_length = 256;
  RoundMode rounds = RoundMode::kNumberTheoretic;

  static Config make(algebra::Suite suite, commit::CommitMode mode, std::string_view owf = "hash");
};

// ---------------------------------------------------------------- keys

struct VerifierSecret {
  std::size_t index = 0;
  int bit = 0;
  sig::BBSigKey sk;
  std::optional<sig::BBSigKey> other;  // only kept by the extractor
};

struct VerifierKeys {
  sig::BBVerKey vk0, vk1;
  sig::BBSigKey sk0, sk1;
  int bit = 0;

  /// What an honest verifier keeps: sk_bit only.
  VerifierSecret honest(std::size_t index) const;
  /// Both signing keys.
  VerifierSecret both(std::size_t index) const;
};

/// Two Boneh-Boyen key pairs and a random bit choosing the retained key.
VerifierKeys verifier_keygen(const algebra::Suite& suite, Rng& rng);

// ---------------------------------------------------------------- sub-protocols

std::shared_ptr<const sigma::OrProtocol> make_pi_v(const Config& cfg, const KeyRecord& key);
std::shared_ptr<const sigma::OrProtocol> make_pi_p(const Config& cfg, const KeyRecord& key, const Element& x,
                                                   const commit::PairCommitment& com, const Scalar& m);
sigma::ProtocolPtr make_relation(const Config& cfg, const Element& x);

Frame make_start(const Element& x, std::size_t index);

// ---------------------------------------------------------------- prover

struct RelationWitness {
  Scalar w;
};
struct SigningKeyWitness {
  sig::BBSigKey sk;
  int bit = 0;
};
struct NoWitness {};

using WitnessSource = std::variant<RelationWitness, SigningKeyWitness, NoWitness>;

class Prover {
 public:
  enum class Phase { kStart, kAwaitV1, kAwaitV2, kDone, kAborted };

  Prover(Config cfg, KeyRecord key, Element x, WitnessSource source, RngHandle rng);

  /// Throws Error if a relation witness does not match x.
  Frame start();
  /// Next frame, or nullopt once the session has aborted.
  std::optional<Frame> on_message(const Frame& in);

  Phase phase() const { return phase_; }
  bool aborted() const { return phase_ == Phase::kAborted; }
  const std::string& abort_reason() const { return abort_reason_; }

  /// Allowed before VSTEP1 is processed.
  void set_witness_source(WitnessSource source);
  void reseed(RngHandle rng) { rng_ = std::move(rng); }
  /// Pi_v challenge to send in PSTEP1 instead of a fresh one.
  void force_pi_v_challenge(sigma::Challenge e) { forced_ev_ = std::move(e); }

  /// Parses a VSTEP2 and returns the Pi_v transcript if it is accepting.
  std::optional<sigma::Transcript> check_pi_v(const Frame& vstep2) const;

  const Element& statement() const { return x_; }
  const KeyRecord& key() const { return key_; }
  const Bytes& tran() const { return tran_; }
  const sigma::OrProtocol& pi_v() const { return *pi_v_; }

 private:
  Frame step1(const Frame& in);
  Frame step2(const Frame& in);

  Config cfg_;
  KeyRecord key_;
  Element x_;
  WitnessSource source_;
  RngHandle rng_;
  Phase phase_ = Phase::kStart;
  std::string abort_reason_;

  std::shared_ptr<const sigma::OrProtocol> pi_v_;
  std::shared_ptr<const sigma::OrProtocol> pi_p_;
  sigma::SessionHandle pi_p_session_;
  std::optional<sigma::Challenge> forced_ev_;
  sigma::Payload a_v_;
  sigma::Challenge e_v_;
  sig::OneTimeKeypair ots_;
  Bytes tran_;
};

// ---------------------------------------------------------------- verifier

class Verifier {
 public:
  enum class Phase { kAwaitStart, kAwaitP1, kAwaitP2, kDone };

  Verifier(Config cfg, std::shared_ptr<const PublicFile> file, VerifierSecret secret, RngHandle rng);

  /// VSTEP1, VSTEP2 or RESULT; nullopt for any message after RESULT.
  std::optional<Frame> on_message(const Frame& in);

  Phase phase() const { return phase_; }
  bool done() const { return phase_ == Phase::kDone; }
  bool accepted() const { return accepted_; }
  const std::string& reject_reason() const { return reject_reason_; }

  void reseed(RngHandle rng) { rng_ = std::move(rng); }
  /// Pi_p challenge to send in VSTEP2 instead of a fresh one.
  void force_pi_p_challenge(sigma::Challenge e) { forced_ep_ = std::move(e); }

  const Element& statement() const { return x_; }
  std::size_t key_index() const { return secret_.index; }
  const Bytes& vk_prime() const { return vk_prime_; }
  const std::optional<commit::PairCommitment>& commitment() const { return com_; }
  const Scalar& message() const { return m_; }
  std::shared_ptr<const sigma::OrProtocol> pi_p() const { return pi_p_; }
  /// The Pi_p conversation, complete once PSTEP2 has been processed.
  std::optional<sigma::Transcript> pi_p_transcript() const;
  const Bytes& tran() const { return tran_; }
  const sigma::Challenge& pi_p_challenge() const { return e_p_; }

 private:
  Frame reject(std::string reason);
  Frame step1(const Frame& in);
  Frame step2(const Frame& in);
  Frame step3(const Frame& in);

  Config cfg_;
  std::shared_ptr<const PublicFile> file_;
  VerifierSecret secret_;
  RngHandle rng_;
  Phase phase_ = Phase::kAwaitStart;
  bool accepted_ = false;
  std::string reject_reason_;

  Element x_;
  std::optional<KeyRecord> key_;
  std::optional<commit::PedersenParams> pedersen_;
  std::shared_ptr<const sigma::OrProtocol> pi_v_;
  sigma::SessionHandle pi_v_session_;
  std::shared_ptr<const sigma::OrProtocol> pi_p_;
  std::optional<sigma::Challenge> forced_ep_;
  Bytes vk_prime_;
  std::optional<sig::OtsPublicKey> ots_pub_;
  std::optional<commit::PairCommitment> com_;
  Scalar m_;
  sigma::Payload a_p_;
  sigma::Challenge e_p_;
  std::optional<sigma::Payload> z_p_;
  Bytes tran_;
};

/// Generic five-message instantiation: interface only.
void generic_round_hook(const Config& cfg);

}  // namespace cnmzk::protocol
