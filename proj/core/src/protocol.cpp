#include "cnmzk/protocol.hpp"

namespace cnmzk::protocol {

using commit::CommitMode;
using sigma::Challenge;

int message_count(RoundMode mode) { return mode == RoundMode::kNumberTheoretic ? 4 : 5; }

void generic_round_hook(const Config&) {
  throw Error("the generic five-message instantiation is not implemented");
}

Config Config::make(algebra::Suite suite, CommitMode mode, std::string_view owf) {
  Config cfg;
  cfg.owf = sig::make_one_way(owf, suite.group);
  cfg.suite = std::move(suite);
  cfg.mode = mode;
  return cfg;
}

VerifierSecret VerifierKeys::honest(std::size_t index) const {
  return {index, bit, bit == 0 ? sk0 : sk1, std::nullopt};
}

VerifierSecret VerifierKeys::both(std::size_t index) const {
  return {index, bit, bit == 0 ? sk0 : sk1, bit == 0 ? sk1 : sk0};
}

VerifierKeys verifier_keygen(const algebra::Suite& suite, Rng& rng) {
  const sig::BBKeypair k0 = sig::bb_keygen(suite.pairing, rng);
  const sig::BBKeypair k1 = sig::bb_keygen(suite.pairing, rng);
  const int bit = rng.bit() ? 1 : 0;
  return {k0.vk, k1.vk, k0.sk, k1.sk, bit};
}

std::shared_ptr<const sigma::OrProtocol> make_pi_v(const Config& cfg, const KeyRecord& key) {
  const unsigned bits = cfg.suite.challenge_bits();
  const Element g2 = cfg.suite.pairing.g2()->generator();
  std::vector<sigma::ProtocolPtr> branches{std::make_shared<sigma::DlPair>(g2, key.vk0.u, key.vk0.v, bits),
                                           std::make_shared<sigma::DlPair>(g2, key.vk1.u, key.vk1.v, bits)};
  return std::make_shared<sigma::OrProtocol>(std::move(branches), sigma::OrProtocol::Strategy::kWitnessIndependent);
}

sigma::ProtocolPtr make_relation(const Config& cfg, const Element& x) {
  return std::make_shared<sigma::SchnorrDl>(cfg.suite.group->generator(), x, cfg.suite.challenge_bits());
}

std::shared_ptr<const sigma::OrProtocol> make_pi_p(const Config& cfg, const KeyRecord& key, const Element& x,
                                                   const commit::PairCommitment& com, const Scalar& m) {
  std::vector<sigma::ProtocolPtr> branches{
      make_relation(cfg, x),
      std::make_shared<sigstmt::Stmt2Protocol>(sigstmt::Stmt2Instance{cfg.suite, com, key.vk0, m}),
      std::make_shared<sigstmt::Stmt2Protocol>(sigstmt::Stmt2Instance{cfg.suite, com, key.vk1, m})};
  return std::make_shared<sigma::OrProtocol>(std::move(branches));
}

Frame make_start(const Element& x, std::size_t index) {
  Writer w;
  w.element(x).u32(static_cast<std::uint32_t>(index));
  return {MsgType::kStart, std::move(w).bytes()};
}

namespace {

Bytes frame_bytes(const Frame& f) { return f.encode(); }

void append(Bytes& out, const Bytes& more) { out.insert(out.end(), more.begin(), more.end()); }

Frame result_frame(bool accept) { return {MsgType::kResult, Bytes{static_cast<std::uint8_t>(accept ? 1 : 0)}}; }

}  // namespace

// ---------------------------------------------------------------- Prover

Prover::Prover(Config cfg, KeyRecord key, Element x, WitnessSource source, RngHandle rng)
    : cfg_(std::move(cfg)), key_(std::move(key)), x_(std::move(x)), source_(std::move(source)), rng_(std::move(rng)) {
  if (cfg_.rounds == RoundMode::kGeneric) generic_round_hook(cfg_);
  if (!x_.valid() || !x_.group()->same_as(*cfg_.suite.group)) throw Error("statement must lie in G");
  if (!rng_) throw Error("prover needs a randomness source");
}

Frame Prover::start() {
  if (phase_ != Phase::kStart) throw ProtocolError("prover already started");
  if (const auto* rw = std::get_if<RelationWitness>(&source_)) {
    if (cfg_.suite.group->generator().pow(rw->w) != x_) throw Error("witness does not match the statement");
  }
  pi_v_ = make_pi_v(cfg_, key_);
  Frame f = make_start(x_, key_.index);
  tran_ = frame_bytes(f);
  phase_ = Phase::kAwaitV1;
  return f;
}

void Prover::set_witness_source(WitnessSource source) {
  if (phase_ != Phase::kStart && phase_ != Phase::kAwaitV1) throw ProtocolError("witness source is fixed");
  source_ = std::move(source);
}

std::optional<Frame> Prover::on_message(const Frame& in) {
  const MsgType expected = phase_ == Phase::kAwaitV1 ? MsgType::kVStep1 : MsgType::kVStep2;
  if ((phase_ != Phase::kAwaitV1 && phase_ != Phase::kAwaitV2) || in.type != expected) {
    if (phase_ != Phase::kAborted) abort_reason_ = "out-of-order message";
    phase_ = Phase::kAborted;
    return std::nullopt;
  }
  try {
    return phase_ == Phase::kAwaitV1 ? step1(in) : step2(in);
  } catch (const Error& e) {
    abort_reason_ = e.what();
    phase_ = Phase::kAborted;
    return std::nullopt;
  }
}

Frame Prover::step1(const Frame& in) {
  const algebra::Suite& suite = cfg_.suite;
  const auto& group = suite.group;
  Reader r(in.payload);
  a_v_ = pi_v_->read_first(r);
  Element h;
  if (cfg_.mode == CommitMode::kPedersen) {
    h = r.element(*group);
    if (h.is_identity()) throw ProtocolError("degenerate commitment key");
  }
  r.expect_end();

  Rng& rng = *rng_;
  ots_ = sig::ots_keygen(cfg_.owf, cfg_.ots_length, rng);
  const Bytes vk_prime = ots_.pub.serialize();
  const Scalar m = sig::message_to_scalar(vk_prime, suite.order_ptr());
  if (cfg_.mode == CommitMode::kElGamal) h = commit::elgamal_sender_setup(group, rng).h;

  std::optional<sig::BBSignature> signature;
  Scalar s1, s2;
  if (const auto* sk = std::get_if<SigningKeyWitness>(&source_)) {
    signature = sig::bb_sign(suite.pairing, sk->sk, m, rng);
    s1 = sig::ceil_repr(signature->sigma, suite.order_ptr());
    s2 = signature->r;
  } else {
    s1 = group->random_scalar(rng);
    s2 = group->random_scalar(rng);
  }
  const Scalar r1 = group->random_scalar(rng);
  const Scalar r2 = group->random_scalar(rng);
  const commit::PairCommitment com = commit::commit_pair(cfg_.mode, group, h, {s1, r1}, {s2, r2});
  pi_p_ = make_pi_p(cfg_, key_, x_, com, m);

  if (const auto* rw = std::get_if<RelationWitness>(&source_)) {
    pi_p_session_ = pi_p_->prove(sigma::or_witness(0, sigma::DlogWitness{rw->w}), rng);
  } else if (const auto* sk = std::get_if<SigningKeyWitness>(&source_)) {
    pi_p_session_ = pi_p_->prove(
        sigma::or_witness(static_cast<std::size_t>(1 + sk->bit), sigma::SignatureWitness{*signature, r1, r2}), rng);
  } else {
    pi_p_session_ = pi_p_->commit_blind(rng);
  }

  e_v_ = forced_ev_ ? *forced_ev_ : Challenge::random(suite.challenge_bits(), rng);
  forced_ev_.reset();

  Writer w;
  w.blob(vk_prime).raw(com.encode()).raw(sigma::encode(pi_p_session_->first())).raw(e_v_.encode());
  Frame out{MsgType::kPStep1, std::move(w).bytes()};
  append(tran_, frame_bytes(in));
  append(tran_, frame_bytes(out));
  phase_ = Phase::kAwaitV2;
  return out;
}

std::optional<sigma::Transcript> Prover::check_pi_v(const Frame& in) const {
  if (in.type != MsgType::kVStep2 || phase_ != Phase::kAwaitV2) return std::nullopt;
  try {
    Reader r(in.payload);
    sigma::Transcript t{a_v_, e_v_, pi_v_->read_response(r)};
    Challenge::decode(r, cfg_.suite.challenge_bits());
    r.expect_end();
    if (!pi_v_->verify(t)) return std::nullopt;
    return t;
  } catch (const Error&) {
    return std::nullopt;
  }
}

Frame Prover::step2(const Frame& in) {
  Reader r(in.payload);
  const sigma::Payload z_v = pi_v_->read_response(r);
  const Challenge e_p = Challenge::decode(r, cfg_.suite.challenge_bits());
  r.expect_end();
  if (!pi_v_->verify({a_v_, e_v_, z_v})) throw ProtocolError("verifier's proof rejected");

  const Bytes zb = sigma::encode(pi_p_session_->respond(e_p));
  append(tran_, frame_bytes(in));
  Writer zw;
  zw.blob(zb);
  append(tran_, zw.bytes());
  const sig::OneTimeSignature delta = sig::ots_sign(ots_, tran_);

  Writer w;
  w.blob(zb).raw(delta.encode());
  phase_ = Phase::kDone;
  return {MsgType::kPStep2, std::move(w).bytes()};
}

// ---------------------------------------------------------------- Verifier

Verifier::Verifier(Config cfg, std::shared_ptr<const PublicFile> file, VerifierSecret secret, RngHandle rng)
    : cfg_(std::move(cfg)), file_(std::move(file)), secret_(std::move(secret)), rng_(std::move(rng)) {
  if (cfg_.rounds == RoundMode::kGeneric) generic_round_hook(cfg_);
  if (!file_) throw Error("verifier needs a public file");
  if (!rng_) throw Error("verifier needs a randomness source");
}

std::optional<Frame> Verifier::on_message(const Frame& in) {
  if (phase_ == Phase::kDone) return std::nullopt;
  const MsgType expected = phase_ == Phase::kAwaitStart ? MsgType::kStart
                           : phase_ == Phase::kAwaitP1  ? MsgType::kPStep1
                                                        : MsgType::kPStep2;
  if (in.type != expected) return reject("out-of-order message");
  try {
    switch (phase_) {
      case Phase::kAwaitStart: return step1(in);
      case Phase::kAwaitP1: return step2(in);
      default: return step3(in);
    }
  } catch (const Error& e) {
    return reject(e.what());
  }
}

Frame Verifier::reject(std::string reason) {
  reject_reason_ = std::move(reason);
  accepted_ = false;
  phase_ = Phase::kDone;
  return result_frame(false);
}

Frame Verifier::step1(const Frame& in) {
  const auto& group = cfg_.suite.group;
  Reader r(in.payload);
  x_ = r.element(*group);
  const std::size_t index = r.u32();
  r.expect_end();
  if (index != secret_.index) throw ProtocolError("session names another verifier's key");
  key_ = file_->at(index);

  Rng& rng = *rng_;
  pi_v_ = make_pi_v(cfg_, *key_);
  pi_v_session_ = pi_v_->prove(
      sigma::or_witness(static_cast<std::size_t>(secret_.bit), sigma::DlPairWitness{secret_.sk.x, secret_.sk.y}), rng);
  Writer w;
  w.raw(sigma::encode(pi_v_session_->first()));
  if (cfg_.mode == CommitMode::kPedersen) {
    pedersen_ = commit::pedersen_receiver_setup(group, rng).first;
    w.element(pedersen_->h);
  }
  Frame out{MsgType::kVStep1, std::move(w).bytes()};
  tran_ = frame_bytes(in);
  append(tran_, frame_bytes(out));
  phase_ = Phase::kAwaitP1;
  return out;
}

Frame Verifier::step2(const Frame& in) {
  const algebra::Suite& suite = cfg_.suite;
  const auto& group = suite.group;
  Reader r(in.payload);
  vk_prime_ = r.blob();
  ots_pub_ = sig::OtsPublicKey::parse(vk_prime_, *cfg_.owf);
  if (ots_pub_->length != cfg_.ots_length) throw ProtocolError("one-time key has the wrong length");

  commit::PairCommitment com;
  com.mode = cfg_.mode;
  com.group = group;
  if (cfg_.mode == CommitMode::kPedersen) {
    com.h = pedersen_->h;
    com.c1 = r.element(*group);
    com.c2 = r.element(*group);
  } else {
    com.h = r.element(*group);
    if (com.h.is_identity()) throw ProtocolError("degenerate commitment key");
    com.c1_rand = r.element(*group);
    com.c1 = r.element(*group);
    com.c2_rand = r.element(*group);
    com.c2 = r.element(*group);
  }
  com_ = com;
  m_ = sig::message_to_scalar(vk_prime_, suite.order_ptr());
  pi_p_ = make_pi_p(cfg_, *key_, x_, com, m_);
  a_p_ = pi_p_->read_first(r);
  const Challenge e_v = Challenge::decode(r, suite.challenge_bits());
  r.expect_end();

  Rng& rng = *rng_;
  const sigma::Payload z_v = pi_v_session_->respond(e_v);
  e_p_ = forced_ep_ ? *forced_ep_ : Challenge::random(suite.challenge_bits(), rng);
  forced_ep_.reset();

  Writer w;
  w.raw(sigma::encode(z_v)).raw(e_p_.encode());
  Frame out{MsgType::kVStep2, std::move(w).bytes()};
  append(tran_, frame_bytes(in));
  append(tran_, frame_bytes(out));
  phase_ = Phase::kAwaitP2;
  return out;
}

Frame Verifier::step3(const Frame& in) {
  Reader r(in.payload);
  const Bytes zb = r.blob();
  Reader zr(zb);
  sigma::Payload z = pi_p_->read_response(zr);
  zr.expect_end();
  const sig::OneTimeSignature delta = sig::OneTimeSignature::decode(r, *cfg_.owf);
  r.expect_end();

  Writer zw;
  zw.blob(zb);
  append(tran_, zw.bytes());
  z_p_ = z;
  const bool proof_ok = pi_p_->verify({a_p_, e_p_, std::move(z)});
  const bool sig_ok = sig::ots_verify(*cfg_.owf, *ots_pub_, tran_, delta);
  phase_ = Phase::kDone;
  accepted_ = proof_ok && sig_ok;
  if (!proof_ok) reject_reason_ = "proof rejected";
  else if (!sig_ok) reject_reason_ = "one-time signature rejected";
  return result_frame(accepted_);
}

std::optional<sigma::Transcript> Verifier::pi_p_transcript() const {
  if (!z_p_) return std::nullopt;
  return sigma::Transcript{a_p_, e_p_, *z_p_};
}

}  // namespace cnmzk::protocol
