#include <set>

#include "doctest.h"

#include "cnmzk/session.hpp"
#include "../support/drive.hpp"
#include "../support/fixtures.hpp"

using namespace cnmzk;
using commit::CommitMode;
using wire::MsgType;

namespace {

SessionOptions opts(CommitMode mode, algebra::PairingBackend::Kind backend, std::uint64_t seed) {
  SessionOptions o;
  o.mode = mode;
  o.backend = backend;
  o.seed = seed;
  return o;
}

const algebra::PairingBackend::Kind kBackends[] = {algebra::PairingBackend::Kind::kTransparent,
                                                   algebra::PairingBackend::Kind::kSchnorr};
const CommitMode kModes[] = {CommitMode::kPedersen, CommitMode::kElGamal};

}  // namespace

TEST_CASE("honest sessions accept in every configuration") {
  for (auto backend : kBackends) {
    for (auto mode : kModes) {
      for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        const SessionOutcome r = run_session(opts(mode, backend, seed));
        CHECK_MESSAGE(r.accepted, r.reject_reason);
      }
    }
  }
}

TEST_CASE("message sequence is START, VSTEP1, PSTEP1, VSTEP2, PSTEP2, RESULT") {
  const SessionOutcome r = run_session({});
  std::vector<MsgType> types;
  for (const auto& rec : r.log) types.push_back(rec.type);
  const std::vector<MsgType> expected{MsgType::kStart,  MsgType::kVStep1, MsgType::kPStep1,
                                      MsgType::kVStep2, MsgType::kPStep2, MsgType::kResult};
  CHECK(types == expected);
  CHECK(r.messages_after_start == 4);
  CHECK(protocol::message_count(protocol::RoundMode::kNumberTheoretic) == 4);
  CHECK(protocol::message_count(protocol::RoundMode::kGeneric) == 5);
}

TEST_CASE("prover refuses a witness that does not match the statement") {
  const SessionSetup s = prepare_session({});
  protocol::Prover p(s.cfg, s.file->at(1), s.x, protocol::RelationWitness{s.w + s.w}, RngHandle(1));
  CHECK_THROWS_AS(p.start(), Error);
  protocol::Prover ok(s.cfg, s.file->at(1), s.x, protocol::RelationWitness{s.w}, RngHandle(1));
  CHECK(ok.start().type == MsgType::kStart);
}

TEST_CASE("a corrupted proof from the verifier makes the prover abort") {
  const auto r = fixtures::drive({}, [](std::size_t i, wire::Frame& f) {
    if (i == 3) f.payload[2] ^= 0x01;
  });
  CHECK(r.prover_aborted);
  CHECK(r.frames.size() == 4);
  CHECK_FALSE(r.accepted);
}

TEST_CASE("a flipped bit anywhere in the session is rejected") {
  SeededRng pick(99);
  for (auto mode : kModes) {
    for (std::size_t index = 0; index < 5; ++index) {
      const auto clean = fixtures::drive(opts(mode, algebra::PairingBackend::Kind::kSchnorr, 3));
      REQUIRE(clean.accepted);
      const std::size_t bits = clean.frames[index].payload.size() * 8;
      for (int trial = 0; trial < 40; ++trial) {
        const std::size_t bit = pick.below(bits).get_ui();
        const auto r = fixtures::drive(opts(mode, algebra::PairingBackend::Kind::kSchnorr, 3),
                                       [&](std::size_t i, wire::Frame& f) {
                                         if (i == index) f.payload[bit / 8] ^= static_cast<std::uint8_t>(0x80 >> (bit % 8));
                                       });
        CAPTURE(index);
        CAPTURE(bit);
        CHECK_FALSE(r.accepted);
      }
    }
  }
}

TEST_CASE("a one-time signature from another session is rejected") {
  const auto a = fixtures::drive(opts(CommitMode::kPedersen, algebra::PairingBackend::Kind::kSchnorr, 4));
  REQUIRE(a.accepted);
  const Bytes foreign = a.frames[4].payload;
  const auto r = fixtures::drive(opts(CommitMode::kPedersen, algebra::PairingBackend::Kind::kSchnorr, 5),
                                 [&](std::size_t i, wire::Frame& f) {
                                   if (i != 4) return;
                                   Reader own(f.payload);
                                   const Bytes z = own.blob();
                                   Reader other(foreign);
                                   other.blob();
                                   Writer w;
                                   w.blob(z).raw(other.raw(other.remaining()));
                                   f.payload = w.bytes();
                                 });
  CHECK_FALSE(r.accepted);
}

TEST_CASE("out-of-order messages") {
  const SessionSetup s = prepare_session({});
  protocol::Verifier v(s.cfg, s.file, s.keys.honest(1), RngHandle(1));
  const auto reply = v.on_message({MsgType::kPStep1, {}});
  REQUIRE(reply);
  CHECK(reply->type == MsgType::kResult);
  CHECK(reply->payload == Bytes{0});
  CHECK(v.done());
  CHECK_FALSE(v.accepted());
  CHECK_FALSE(v.on_message(protocol::make_start(s.x, 1)));

  protocol::Prover p(s.cfg, s.file->at(1), s.x, protocol::RelationWitness{s.w}, RngHandle(1));
  p.start();
  CHECK_FALSE(p.on_message({MsgType::kVStep2, {}}));
  CHECK(p.aborted());
}

TEST_CASE("a session naming another verifier's key is rejected") {
  const SessionSetup s = prepare_session({});
  protocol::Verifier v(s.cfg, s.file, s.keys.honest(1), RngHandle(1));
  const auto reply = v.on_message(protocol::make_start(s.x, 2));
  REQUIRE(reply);
  CHECK(reply->type == MsgType::kResult);
  CHECK_FALSE(v.accepted());
}

TEST_CASE("the public file is append-only until frozen") {
  const algebra::Suite suite = fixtures::schnorr();
  SeededRng rng(1);
  const auto k = protocol::verifier_keygen(suite, rng);
  protocol::PublicFile file(suite);
  CHECK(file.add(k.vk0, k.vk1, protocol::Owner::kHonest, "V1") == 1);
  CHECK(file.add(k.vk1, k.vk0, protocol::Owner::kAdversary, "A") == 2);
  file.freeze();
  CHECK_THROWS_AS(file.add(k.vk0, k.vk1, protocol::Owner::kHonest, "V3"), ProtocolError);
  CHECK_THROWS_AS(file.at(3), ProtocolError);
  const auto back = protocol::PublicFile::from_json(file.to_json());
  CHECK(back.frozen());
  CHECK(back.size() == 2);
  CHECK(back.at(2).vk0 == k.vk1);
  CHECK(back.at(2).owner == protocol::Owner::kAdversary);
  CHECK_THROWS_AS(protocol::PublicFile::from_json("{}"), DecodeError);
}

TEST_CASE("honest verifiers keep one signing key, the extractor both") {
  const algebra::Suite suite = fixtures::schnorr();
  SeededRng rng(2);
  const auto k = protocol::verifier_keygen(suite, rng);
  const auto h = k.honest(1);
  CHECK_FALSE(h.other);
  CHECK(sig::bb_key_matches(h.bit == 0 ? k.vk0 : k.vk1, h.sk));
  const auto b = k.both(1);
  REQUIRE(b.other);
  CHECK(sig::bb_key_matches(b.bit == 0 ? k.vk1 : k.vk0, *b.other));
}

TEST_CASE("the generic five-message instantiation is an interface only") {
  auto cfg = protocol::Config::make(fixtures::schnorr(), CommitMode::kPedersen);
  CHECK_THROWS_AS(protocol::generic_round_hook(cfg), Error);
}

TEST_CASE("cost beyond the bare sigma protocol is constant across statements") {
  const algebra::Suite suite = fixtures::schnorr();
  const auto g = suite.group->generator();
  std::uint64_t sigma_p = 0, sigma_v = 0;
  {
    const sigma::SchnorrDl p(g, g.pow(suite.group->scalar(3)), 3);
    SeededRng rng(1);
    algebra::CountScope ps;
    auto session = p.prove(sigma::DlogWitness{suite.group->scalar(3)}, rng);
    const auto z = session->respond(sigma::Challenge(3, 1));
    sigma_p = ps.delta().exponentiations;
    algebra::CountScope vs;
    CHECK(p.verify({session->first(), sigma::Challenge(3, 1), z}));
    sigma_v = vs.delta().exponentiations;
  }
  std::set<std::uint64_t> prover, verifier;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const SessionOutcome r = run_session(opts(CommitMode::kPedersen, algebra::PairingBackend::Kind::kSchnorr, seed));
    prover.insert(r.prover.exponentiations - sigma_p);
    verifier.insert(r.verifier.exponentiations - sigma_v);
  }
  CHECK(prover.size() == 1);
  CHECK(verifier.size() == 1);
  CHECK(*prover.begin() < 60);
  CHECK(*verifier.begin() < 60);
}
