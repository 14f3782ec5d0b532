#include "doctest.h"

#include "cnmzk/algebra.hpp"
#include "cnmzk/codec.hpp"
#include "../support/fixtures.hpp"
#include "../support/oracle.hpp"

using namespace cnmzk;
using namespace cnmzk::algebra;

TEST_CASE("group_exp matches direct modular exponentiation") {
  const Suite s = fixtures::schnorr();
  const Element g = s.group->generator();
  CHECK(g.pow(s.group->scalar(4)).to_integer() == 16);
  CHECK(oracle::modpow(2, 4, 23) == 16);
  CHECK(g.pow(s.group->scalar(0)).is_identity());
  CHECK(g.pow(s.group->scalar(11)).is_identity());
  for (long k = 0; k < 11; ++k) {
    CHECK(g.pow(s.group->scalar(k)).to_integer() == oracle::modpow(2, static_cast<std::uint64_t>(k), 23));
  }
}

TEST_CASE("scalar arithmetic is mod q") {
  const Modulus q = make_modulus(11);
  const Scalar a(q, 9), b(q, 5);
  CHECK((a + b).value() == 3);
  CHECK((a - b).value() == 4);
  CHECK((b - a).value() == 7);
  CHECK((a * b).value() == 1);
  CHECK(a.inverse().value() == oracle::modinv(9, 11));
  CHECK((-b).value() == 6);
  CHECK_THROWS_AS(Scalar(q, 0).inverse(), AlgebraError);
  CHECK_THROWS_AS(Scalar(q, 3) + Scalar(make_modulus(13), 3), AlgebraError);
}

TEST_CASE("pinned parameter table") {
  const auto p4 = table_params(4);
  const auto p5 = table_params(5);
  REQUIRE(p4);
  REQUIRE(p5);
  CHECK(p4->p == 23);
  CHECK(p4->q == 11);
  CHECK(p4->g == 2);
  CHECK(p5->p == 47);
  CHECK(p5->q == 23);
  CHECK(p5->g == 4);
  for (const auto& p : {*p4, *p5}) {
    const auto pi = p.p.get_ui(), qi = p.q.get_ui(), gi = p.g.get_ui();
    CHECK(oracle::is_prime(pi));
    CHECK(oracle::is_prime(qi));
    CHECK(pi == 2 * qi + 1);
    CHECK(oracle::order_of(gi, pi) == qi);
    CHECK_NOTHROW(p.validate());
  }
  CHECK(test_params() == *p4);
}

TEST_CASE("parameter search yields valid safe primes") {
  SeededRng rng(7);
  for (unsigned bits : {6u, 8u, 12u, 16u}) {
    const auto p = gen_schnorr_params(bits, rng, {.use_table = false});
    CHECK(mpz_sizeinbase(p.q.get_mpz_t(), 2) == bits);
    CHECK_NOTHROW(p.validate());
  }
  SeededRng a(3), b(3);
  CHECK(gen_schnorr_params(10, a, {.use_table = false}) == gen_schnorr_params(10, b, {.use_table = false}));
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS((SchnorrGroupParams{23, 11, 5}.validate()), AlgebraError);
  CHECK_THROWS_AS((SchnorrGroupParams{23, 11, 1}.validate()), AlgebraError);
  CHECK_THROWS_AS((SchnorrGroupParams{21, 10, 2}.validate()), AlgebraError);
}

TEST_CASE("residue group membership is the quadratic residues") {
  const Suite s = fixtures::schnorr();
  std::vector<long> qr;
  for (long x = 1; x < 23; ++x) qr.push_back(static_cast<long>(oracle::modpow(static_cast<std::uint64_t>(x), 2, 23)));
  for (long v = 0; v < 30; ++v) {
    const bool expected = v > 0 && v < 23 && std::find(qr.begin(), qr.end(), v) != qr.end();
    CHECK(s.group->contains(v) == expected);
    if (v > 0 && v < 23) CHECK(expected == (oracle::modpow(static_cast<std::uint64_t>(v), 11, 23) == 1));
  }
  CHECK_THROWS_AS(s.group->element(5), AlgebraError);
}

TEST_CASE("elements of different groups do not mix") {
  const Suite s = fixtures::schnorr();
  const Element a = s.pairing.g1()->generator();
  const Element b = s.pairing.g2()->generator();
  CHECK_THROWS_AS(a * b, AlgebraError);
  CHECK(a.tag() == GroupTag::kG1);
  CHECK(b.tag() == GroupTag::kG2);
}

TEST_CASE("canonical element encoding") {
  const Suite s = fixtures::schnorr();
  const Element e = s.group->element(16);
  CHECK(to_hex(e.encode()) == "0110");
  const Suite t = fixtures::transparent();
  CHECK(to_hex(t.pairing.gt()->generator().pow(t.group->scalar(3)).encode()) == "0403");
  const Bytes bytes = e.encode();
  Reader r(bytes);
  CHECK(r.element(*s.group) == e);
}

TEST_CASE("transparent pairing multiplies discrete logs") {
  const Suite s = fixtures::transparent();
  const auto& pb = s.pairing;
  const Element a = pb.g1()->generator().pow(s.group->scalar(3));
  const Element b = pb.g2()->generator().pow(s.group->scalar(4));
  const Element c = pb.pair(a, b);
  CHECK(c.tag() == GroupTag::kGT);
  CHECK(c.to_integer() == 1);
  CHECK(c == pb.gt()->generator());
  CHECK(!pb.pair(pb.g1()->generator(), pb.g2()->generator()).is_identity());
}

TEST_CASE("bilinearity holds exhaustively at q = 11") {
  for (const Suite& s : fixtures::both_backends()) {
    CAPTURE(fixtures::backend_name(s));
    const auto& pb = s.pairing;
    const Element z = pb.pair(pb.g1()->generator(), pb.g2()->generator());
    CHECK(!z.is_identity());
    for (long a = 0; a < 11; ++a) {
      for (long b = 0; b < 11; ++b) {
        const Element ga = pb.g1()->generator().pow(s.group->scalar(a));
        const Element gb = pb.g2()->generator().pow(s.group->scalar(b));
        CHECK(pb.pair(ga, gb) == z.pow(s.group->scalar(a * b)));
      }
    }
  }
}

TEST_CASE("psi maps g2 to g1 homomorphically") {
  for (const Suite& s : fixtures::both_backends()) {
    const auto& pb = s.pairing;
    CHECK(pb.psi(pb.g2()->generator()) == pb.g1()->generator());
    const Element x = pb.g2()->generator().pow(s.group->scalar(7));
    CHECK(pb.psi(x) == pb.g1()->generator().pow(s.group->scalar(7)));
  }
}

TEST_CASE("discrete logs by baby-step giant-step") {
  SeededRng rng(11);
  SchnorrGroupParams p = gen_schnorr_params(24, rng, {.use_table = false});
  const GroupPtr g = Group::residue(GroupTag::kG, p);
  for (int i = 0; i < 20; ++i) {
    const Scalar k = g->random_scalar(rng);
    const auto d = g->dlog(g->generator().pow(k));
    REQUIRE(d);
    CHECK(*d == k);
  }
}

TEST_CASE("operation counters count exponentiations and pairings") {
  const Suite s = fixtures::schnorr();
  CountScope scope;
  const Element g = s.group->generator();
  (void)g.pow(s.group->scalar(3));
  (void)g.pow(s.group->scalar(5));
  (void)s.pairing.pair(s.pairing.g1()->generator(), s.pairing.g2()->generator());
  CHECK(scope.delta().exponentiations == 2);
  CHECK(scope.delta().pairings == 1);
}

TEST_CASE("challenge length is bitlen(q) - 1") {
  CHECK(fixtures::schnorr().challenge_bits() == 3);
  CHECK(Suite::make(*table_params(5), PairingBackend::Kind::kSchnorr).challenge_bits() == 4);
}
