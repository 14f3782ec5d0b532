#include "doctest.h"

#include "cnmzk/sigstmt.hpp"
#include "support/hvzk.hpp"

using namespace cnmzk;
using algebra::Scalar;
using sigma::Challenge;
using fixtures::Dist;
using fixtures::real_transcripts;
using fixtures::simulated_transcripts;

TEST_CASE("base protocols: simulated and real transcripts are identically distributed") {
  const algebra::Suite s = fixtures::schnorr();
  const auto g = s.group->generator();
  const unsigned bits = s.challenge_bits();
  const Scalar w = s.group->scalar(7), w2 = s.group->scalar(4);
  const commit::PedersenParams params = commit::PedersenParams::make(s.group, g.pow(s.group->scalar(5)));
  const sigma::SchnorrDl schnorr(g, g.pow(w), bits);
  const sigma::DlPair pair(g, g.pow(w), g.pow(w2), bits);
  const sigma::PedersenOpenPok pok(params, commit::pedersen_commit_with(params, {w, w2}).c, bits);

  for (long ev = 0; ev < 8; ++ev) {
    const Challenge e(bits, ev);
    CAPTURE(ev);
    const Dist a = real_transcripts(schnorr, sigma::DlogWitness{w}, e);
    CHECK(a.total == 11);
    CHECK(a.same_as(simulated_transcripts(schnorr, e)));
    const Dist b = real_transcripts(pair, sigma::DlPairWitness{w, w2}, e);
    CHECK(b.total == 121);
    CHECK(b.same_as(simulated_transcripts(pair, e)));
    const Dist c = real_transcripts(pok, commit::Opening{w, w2}, e);
    CHECK(c.same_as(simulated_transcripts(pok, e)));
  }
}

TEST_CASE("signature statement, Pedersen mode: exhaustive zero knowledge at q = 11") {
  const auto r = fixtures::stmt2_pedersen_enumeration(5);
  CHECK(r.real.total == 10ull * 11 * 11 * 11 * 11 * 10);
  CHECK(r.simulated.total == 10ull * 10 * 11 * 11 * 11 * 11);
  CHECK(r.real.same_as(r.simulated));
}

TEST_CASE("signature statement, ElGamal mode: every simulated transcript verifies") {
  for (const auto& s : fixtures::both_backends()) {
    SeededRng rng(23);
    for (int i = 0; i < 100; ++i) {
      const fixtures::Stmt2Case c = fixtures::random_stmt2_case(s, commit::CommitMode::kElGamal, rng);
      const sigstmt::Stmt2Protocol proto(c.inst);
      CHECK(proto.verify(proto.simulate(Challenge::random(s.challenge_bits(), rng), rng)));
    }
  }
}

TEST_CASE("OR proofs are witness indistinguishable") {
  const algebra::Suite s = fixtures::schnorr();
  const auto g = s.group->generator();
  const unsigned bits = s.challenge_bits();
  const Scalar w0 = s.group->scalar(3), w1 = s.group->scalar(9);
  const auto b0 = std::make_shared<sigma::SchnorrDl>(g, g.pow(w0), bits);
  const auto b1 = std::make_shared<sigma::SchnorrDl>(g, g.pow(w1), bits);
  for (auto strategy : {sigma::OrProtocol::Strategy::kClassic, sigma::OrProtocol::Strategy::kWitnessIndependent}) {
    const sigma::OrProtocol orp({b0, b1}, strategy);
    for (long ev : {0L, 6L}) {
      const Challenge e(bits, ev);
      const Dist d0 = real_transcripts(orp, sigma::or_witness(0, sigma::DlogWitness{w0}), e);
      const Dist d1 = real_transcripts(orp, sigma::or_witness(1, sigma::DlogWitness{w1}), e);
      CHECK(d0.total == d1.total);
      CHECK(d0.same_as(d1));
      CHECK(d0.same_as(simulated_transcripts(orp, e)));
    }
  }
}

TEST_CASE("witness-independent OR: the first message depends only on the tape") {
  const algebra::Suite s = fixtures::transparent();
  const auto g = s.group->generator();
  const unsigned bits = s.challenge_bits();
  const Scalar x0 = s.group->scalar(2), y0 = s.group->scalar(6), x1 = s.group->scalar(8), y1 = s.group->scalar(1);
  const auto b0 = std::make_shared<sigma::DlPair>(g, g.pow(x0), g.pow(y0), bits);
  const auto b1 = std::make_shared<sigma::DlPair>(g, g.pow(x1), g.pow(y1), bits);
  const sigma::OrProtocol orp({b0, b1}, sigma::OrProtocol::Strategy::kWitnessIndependent);
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    SeededRng r0(seed), r1(seed), rb(seed);
    const auto p0 = orp.prove(sigma::or_witness(0, sigma::DlPairWitness{x0, y0}), r0);
    const auto p1 = orp.prove(sigma::or_witness(1, sigma::DlPairWitness{x1, y1}), r1);
    const auto blind = orp.commit_blind(rb);
    CHECK(sigma::encode(p0->first()) == sigma::encode(p1->first()));
    CHECK(sigma::encode(p0->first()) == sigma::encode(blind->first()));
    const Challenge e(bits, static_cast<long>(seed % 8));
    CHECK(orp.verify({p0->first(), e, p0->respond(e)}));
    CHECK(orp.verify({p1->first(), e, p1->respond(e)}));
  }
}
