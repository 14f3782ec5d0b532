#include "doctest.h"

#include "cnmzk/sigstmt.hpp"
#include "../support/fixtures.hpp"
#include "../support/stmt2_fixture.hpp"

using namespace cnmzk;
using namespace cnmzk::sigstmt;
using commit::CommitMode;

namespace {

const CommitMode kModes[] = {CommitMode::kPedersen, CommitMode::kElGamal};

fixtures::Stmt2Case micro(CommitMode mode) {
  const algebra::Suite s = fixtures::transparent();
  auto sc = [&](long v) { return s.group->scalar(v); };
  const sig::BBKeypair kp = sig::bb_keypair_from(s.pairing, sc(2), sc(3));
  const sig::BBSignature sg = sig::bb_sign_with(s.pairing, kp.sk, sc(4), sc(1));
  return fixtures::stmt2_case(s, mode, kp, sc(4), sg, sc(5), sc(7), sc(4));
}

}  // namespace

TEST_CASE("micro instance: x = 2, y = 3, m = 4, sigma dlog 5, r = 1 accepts for every challenge") {
  for (CommitMode mode : kModes) {
    CAPTURE(to_string(mode));
    const auto c = micro(mode);
    CHECK(c.wit.sig.sigma.group()->dlog(c.wit.sig.sigma)->value() == 5);
    CHECK(stmt2_holds(c.inst, c.wit));
    SeededRng rng(1);
    for (long e = 0; e < 8; ++e) {
      const auto [first, state] = stmt2_prove_first(c.inst, c.wit, rng);
      const Challenge ch(3, e);
      CHECK(stmt2_verify(c.inst, first, ch, stmt2_respond(state, ch)));
    }
  }
}

TEST_CASE("prover first message follows the documented formulas") {
  const auto c = micro(CommitMode::kPedersen);
  const auto& s = c.inst.suite;
  auto sc = [&](long v) { return s.group->scalar(v); };
  const auto [f, state] = stmt2_prove_first_with(c.inst, c.wit, sc(1), sc(2), sc(3), sc(4), sc(6));
  const auto g = s.group->generator();
  const auto h = c.inst.com.h;
  CHECK(f.M1 == g.pow(sc(1)) * h.pow(sc(2)));
  CHECK(f.M2 == g.pow(sc(3)) * h.pow(sc(4)));
  CHECK(f.F == c.wit.sig.sigma.pow(sc(6)));
  CHECK(f.D == f.F.pow(sig::ceil_repr(c.wit.sig.sigma, s.order_ptr())));
  CHECK(f.E == f.F.pow(-sc(1)));
  CHECK(f.A == c.kp.vk.v.pow(c.wit.sig.r));
  CHECK(f.B == c.kp.vk.v.pow(sc(3)));
  CHECK(f.t == sc(6));
  CHECK(!f.N1);
  const Stmt2Response z0 = stmt2_respond(state, Challenge(3, 0));
  CHECK(z0.y1 == sc(1));
  CHECK(z0.z1 == sc(2));
  CHECK(z0.y2 == sc(3));
  CHECK(z0.z2 == sc(4));
  CHECK_THROWS_AS(stmt2_prove_first_with(c.inst, c.wit, sc(1), sc(2), sc(3), sc(4), sc(0)), Error);
}

TEST_CASE("responses are linear in the challenge") {
  const auto c = micro(CommitMode::kPedersen);
  SeededRng rng(2);
  const auto [f, state] = stmt2_prove_first(c.inst, c.wit, rng);
  const auto q = c.inst.suite.order_ptr();
  const Stmt2Response a = stmt2_respond(state, Challenge(3, 6));
  const Stmt2Response b = stmt2_respond(state, Challenge(3, 2));
  const algebra::Scalar de(q, 4);
  CHECK(a.y1 - b.y1 == de * sig::ceil_repr(c.wit.sig.sigma, q));
  CHECK(a.z1 - b.z1 == de * c.wit.r1);
  CHECK(a.y2 - b.y2 == de * c.wit.sig.r);
  CHECK(a.z2 - b.z2 == de * c.wit.r2);
}

TEST_CASE("completeness over random instances on both backends and modes") {
  SeededRng rng(3);
  for (const auto& s : fixtures::both_backends()) {
    for (CommitMode mode : kModes) {
      for (int i = 0; i < 100; ++i) {
        const auto c = fixtures::random_stmt2_case(s, mode, rng);
        const auto [f, state] = stmt2_prove_first(c.inst, c.wit, rng);
        const Challenge e = Challenge::random(3, rng);
        REQUIRE(stmt2_verify(c.inst, f, e, stmt2_respond(state, e)));
      }
    }
  }
}

TEST_CASE("simulated transcripts verify") {
  SeededRng rng(4);
  for (const auto& s : fixtures::both_backends()) {
    for (CommitMode mode : kModes) {
      for (int i = 0; i < 100; ++i) {
        const auto c = fixtures::random_stmt2_case(s, mode, rng);
        const Challenge e = Challenge::random(3, rng);
        const auto [f, z] = stmt2_simulate(c.inst, e, rng);
        REQUIRE(stmt2_verify(c.inst, f, e, z));
      }
    }
  }
}

TEST_CASE("a scripted zero for s is refused") {
  const auto c = micro(CommitMode::kPedersen);
  ScriptedRng rng{0, 1, 1, 1, 1, 1};
  CHECK_THROWS_AS(stmt2_simulate(c.inst, Challenge(3, 1), rng), Error);
}

TEST_CASE("perturbing any response scalar breaks verification") {
  SeededRng rng(5);
  for (CommitMode mode : kModes) {
    const auto c = fixtures::random_stmt2_case(fixtures::schnorr(), mode, rng);
    const auto [f, state] = stmt2_prove_first(c.inst, c.wit, rng);
    const Challenge e(3, 5);
    const Stmt2Response z = stmt2_respond(state, e);
    const auto one = c.inst.suite.group->scalar(1);
    for (int i = 0; i < 4; ++i) {
      Stmt2Response bad = z;
      algebra::Scalar* fields[] = {&bad.y1, &bad.y2, &bad.z1, &bad.z2};
      *fields[i] = *fields[i] + one;
      CHECK_FALSE(stmt2_verify(c.inst, f, e, bad));
    }
    Stmt2FirstMsg zero_t = f;
    zero_t.t = c.inst.suite.group->scalar(0);
    CHECK_FALSE(stmt2_verify(c.inst, zero_t, e, z));
  }
}

TEST_CASE("two-challenge extraction returns the original witness") {
  SeededRng rng(6);
  for (const auto& s : fixtures::both_backends()) {
    for (CommitMode mode : kModes) {
      for (int i = 0; i < 50; ++i) {
        const auto c = fixtures::random_stmt2_case(s, mode, rng);
        const auto [f, state] = stmt2_prove_first(c.inst, c.wit, rng);
        const Challenge e1(3, 1), e2(3, 6);
        const Stmt2Witness w = stmt2_extract(c.inst, f, e1, stmt2_respond(state, e1), e2, stmt2_respond(state, e2));
        CHECK(w.sig.sigma == c.wit.sig.sigma);
        CHECK(w.sig.r == c.wit.sig.r);
        CHECK(w.r1 == c.wit.r1);
        CHECK(w.r2 == c.wit.r2);
        CHECK(stmt2_holds(c.inst, w));
      }
    }
  }
}

TEST_CASE("extraction with equal challenges is refused") {
  const auto c = micro(CommitMode::kPedersen);
  SeededRng rng(7);
  const auto [f, state] = stmt2_prove_first(c.inst, c.wit, rng);
  const Challenge e(3, 3);
  CHECK_THROWS_AS(stmt2_extract(c.inst, f, e, stmt2_respond(state, e), e, stmt2_respond(state, e)), ExtractionError);
}

TEST_CASE("payload layout of the first message") {
  const auto p = micro(CommitMode::kElGamal);
  SeededRng rng(8);
  const auto [f, state] = stmt2_prove_first(p.inst, p.wit, rng);
  const sigma::Payload pl = f.to_payload();
  CHECK(pl.size() == 10);
  CHECK(sigma::element_at(pl, 0) == f.A);
  CHECK(sigma::scalar_at(pl, 7) == f.t);
  CHECK(sigma::element_at(pl, 9) == *f.N2);
  const Stmt2Protocol proto(p.inst);
  CHECK(proto.first_size() == 10);
  CHECK(Stmt2Protocol(micro(CommitMode::kPedersen).inst).first_size() == 8);
}

TEST_CASE("statement 1: or over two verification keys") {
  SeededRng rng(9);
  for (const auto& s : fixtures::both_backends()) {
    for (CommitMode mode : kModes) {
      const auto c = fixtures::random_stmt2_case(s, mode, rng);
      const sig::BBKeypair other = sig::bb_keygen(s.pairing, rng);
      for (int bit : {0, 1}) {
        const auto& vk0 = bit == 0 ? c.kp.vk : other.vk;
        const auto& vk1 = bit == 0 ? other.vk : c.kp.vk;
        const auto orp = stmt1_or(s, vk0, vk1, c.inst.com, c.inst.m);
        const auto session = orp->prove(sigma::or_witness(static_cast<std::size_t>(bit), c.wit), rng);
        const Challenge e = Challenge::random(3, rng);
        const sigma::Transcript t{session->first(), e, session->respond(e)};
        CHECK(orp->verify(t));
        const auto parts = orp->split(t);
        CHECK((parts[0].e ^ parts[1].e) == e);
      }
    }
  }
}
