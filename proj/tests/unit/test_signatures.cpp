#include "doctest.h"

#include "cnmzk/codec.hpp"
#include "cnmzk/signatures.hpp"
#include "../support/fixtures.hpp"
#include "../support/oracle.hpp"

using namespace cnmzk;
using namespace cnmzk::sig;

namespace {

const algebra::Suite& tsuite() {
  static const algebra::Suite s = fixtures::transparent();
  return s;
}

algebra::Scalar sc(long v) { return tsuite().group->scalar(v); }

mpz_class dlog(const algebra::Element& e) { return e.group()->dlog(e)->value(); }

}  // namespace

TEST_CASE("bb keygen on the transparent backend: x = 2, y = 3") {
  ScriptedRng rng{2, 3};
  const BBKeypair kp = bb_keygen(tsuite().pairing, rng);
  CHECK(dlog(kp.vk.u) == 2);
  CHECK(dlog(kp.vk.v) == 3);
  CHECK(dlog(kp.vk.z) == 1);
  CHECK(kp.vk.well_formed(tsuite().pairing));
  CHECK(bb_key_matches(kp.vk, kp.sk));
  CHECK(kp.vk.u == kp.vk.g2.pow(kp.sk.x));
}

TEST_CASE("bb keygen redraws zero exponents") {
  ScriptedRng rng{0, 2, 0, 3};
  const BBKeypair kp = bb_keygen(tsuite().pairing, rng);
  CHECK(kp.sk.x == sc(2));
  CHECK(kp.sk.y == sc(3));
}

TEST_CASE("bb sign: x = 2, y = 3, m = 4, r = 1 gives sigma with dlog 5") {
  const BBKeypair kp = bb_keypair_from(tsuite().pairing, sc(2), sc(3));
  const BBSignature s = bb_sign_with(tsuite().pairing, kp.sk, sc(4), sc(1));
  CHECK(dlog(s.sigma) == 5);
  CHECK(oracle::modinv(9, 11) == 5);
  CHECK(bb_verify(tsuite().pairing, kp.vk, sc(4), s));
  CHECK_FALSE(bb_verify(tsuite().pairing, kp.vk, sc(5), s));
  CHECK_FALSE(bb_verify(tsuite().pairing, kp.vk, sc(4), {tsuite().pairing.g1()->identity(), s.r}));
}

TEST_CASE("bb sign retries an r that zeroes the denominator") {
  const BBKeypair kp = bb_keypair_from(tsuite().pairing, sc(2), sc(3));
  CHECK((2 + 4 + 3 * 9) % 11 == 0);
  ScriptedRng rng{9, 1};
  const BBSignature s = bb_sign(tsuite().pairing, kp.sk, sc(4), rng);
  CHECK(s.r == sc(1));
  CHECK_THROWS_AS(bb_sign_with(tsuite().pairing, kp.sk, sc(4), sc(9)), Error);
}

TEST_CASE("bb signature algebra holds exhaustively at q = 11") {
  for (long x = 1; x < 11; ++x) {
    for (long y = 1; y < 11; ++y) {
      const BBKeypair kp = bb_keypair_from(tsuite().pairing, sc(x), sc(y));
      for (long m = 1; m < 11; ++m) {
        for (long r = 0; r < 11; ++r) {
          const long den = (x + m + y * r) % 11;
          if (den == 0) continue;
          const BBSignature s = bb_sign_with(tsuite().pairing, kp.sk, sc(m), sc(r));
          CHECK(dlog(s.sigma) * den % 11 == 1);
          CHECK(bb_verify(tsuite().pairing, kp.vk, sc(m), s));
        }
      }
    }
  }
}

TEST_CASE("bb completeness on the schnorr backend") {
  const algebra::Suite s = fixtures::schnorr();
  SeededRng rng(5);
  for (int i = 0; i < 100; ++i) {
    const BBKeypair kp = bb_keygen(s.pairing, rng);
    const auto m = s.group->random_nonzero(rng);
    const BBSignature sig = bb_sign(s.pairing, kp.sk, m, rng);
    CHECK(bb_verify(s.pairing, kp.vk, m, sig));
  }
}

TEST_CASE("messages map into Zq*") {
  const Bytes abc{'a', 'b', 'c'};
  CHECK(to_hex(default_digest().hash(abc)) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(message_to_scalar(abc, tsuite().order_ptr()).value() == 6);
  const auto q23 = algebra::make_modulus(23);
  CHECK(message_to_scalar(abc, q23).value() == 8);
}

TEST_CASE("lamport over g^x: L = 2, secrets (1, 2, 3, 4)") {
  const algebra::Suite s = fixtures::schnorr();
  const auto f = make_one_way("exp", s.group);
  auto kp = ots_keypair_from(f, {Bytes{1}, Bytes{2}, Bytes{3}, Bytes{4}});
  REQUIRE(kp.pub.images.size() == 4);
  const long expected[] = {2, 4, 8, 16};
  for (int i = 0; i < 4; ++i) {
    CHECK(kp.pub.images[i] == s.group->element(expected[i]).encode());
    CHECK(static_cast<long>(oracle::modpow(2, static_cast<std::uint64_t>(i + 1), 23)) == expected[i]);
  }
  CHECK(to_hex(kp.pub.serialize()) == "0000000200020102010401080110");
  CHECK(OtsPublicKey::parse(kp.pub.serialize(), *f) == kp.pub);

  const OneTimeSignature sig = ots_sign_bits(kp, {true, false});
  REQUIRE(sig.reveals.size() == 2);
  CHECK(sig.reveals[0] == Bytes{2});
  CHECK(sig.reveals[1] == Bytes{3});
  CHECK(ots_verify_bits(*f, kp.pub, {true, false}, sig));
  CHECK_FALSE(ots_verify_bits(*f, kp.pub, {false, false}, sig));
  CHECK_FALSE(ots_verify_bits(*f, kp.pub, {true}, sig));
}

TEST_CASE("digest bits are most significant first") {
  const Bytes abc{'a', 'b', 'c'};
  const auto bits = digest_bits(abc, 8);
  const std::vector<bool> expected{true, false, true, true, true, false, true, false};
  CHECK(bits == expected);
}

TEST_CASE("one-time signatures over both one-way functions") {
  const algebra::Suite s = fixtures::schnorr();
  for (const char* name : {"hash", "exp"}) {
    CAPTURE(name);
    SeededRng rng(9);
    const auto f = make_one_way(name, s.group);
    auto kp = ots_keygen(f, 256, rng);
    const Bytes msg{'t', 'r', 'a', 'n'};
    const OneTimeSignature sig = ots_sign(kp, msg);
    CHECK(kp.used);
    CHECK(ots_verify(*f, kp.pub, msg, sig));
    CHECK_FALSE(ots_verify(*f, kp.pub, Bytes{'t', 'r', 'a', 'm'}, sig));
    OneTimeSignature bad = sig;
    bad.reveals[17][0] ^= 1;
    CHECK_FALSE(ots_verify(*f, kp.pub, msg, bad));
    CHECK_THROWS_AS(ots_sign(kp, msg), ProtocolError);

    Writer w;
    w.raw(sig.encode());
    Reader r(w.bytes());
    CHECK(OneTimeSignature::decode(r, *f) == sig);
  }
}

TEST_CASE("ots signing is deterministic given key and message") {
  SeededRng rng(4);
  const auto f = make_one_way("hash", nullptr);
  auto a = ots_keygen(f, 64, rng);
  auto b = a;
  const Bytes msg{1, 2, 3};
  CHECK(ots_sign(a, msg) == ots_sign(b, msg));
}

TEST_CASE("one-time public keys parse strictly") {
  const auto f = make_one_way("hash", nullptr);
  SeededRng rng(1);
  auto kp = ots_keygen(f, 4, rng);
  Bytes ser = kp.pub.serialize();
  CHECK_THROWS_AS(OtsPublicKey::parse(std::span(ser).first(ser.size() - 1), *f), DecodeError);
  ser[5] = 31;
  CHECK_THROWS_AS(OtsPublicKey::parse(ser, *f), DecodeError);
  CHECK_THROWS_AS(make_one_way("md5", nullptr), Error);
}
