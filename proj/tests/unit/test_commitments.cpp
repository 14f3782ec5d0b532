#include "doctest.h"

#include <set>

#include "cnmzk/commitments.hpp"
#include "../support/fixtures.hpp"
#include "../support/oracle.hpp"

using namespace cnmzk;
using namespace cnmzk::commit;

namespace {

const algebra::Suite& suite() {
  static const algebra::Suite s = fixtures::schnorr();
  return s;
}

algebra::Scalar sc(long v) { return suite().group->scalar(v); }

}  // namespace

TEST_CASE("pedersen receiver setup: x = 4 gives h = 16") {
  ScriptedRng rng{4};
  const auto [params, x] = pedersen_receiver_setup(suite().group, rng);
  CHECK(x == sc(4));
  CHECK(params.h.to_integer() == 16);
  CHECK(oracle::modpow(2, 4, 23) == 16);
}

TEST_CASE("pedersen receiver setup redraws a zero trapdoor") {
  ScriptedRng rng{0, 3};
  const auto [params, x] = pedersen_receiver_setup(suite().group, rng);
  CHECK(x == sc(3));
}

TEST_CASE("pedersen commit: value 3, r 5 under h = 16 gives C = 2") {
  const auto params = PedersenParams::make(suite().group, suite().group->element(16));
  const auto c = pedersen_commit_with(params, {sc(3), sc(5)});
  CHECK(c.c.to_integer() == 2);
  CHECK(oracle::modpow(2, 3, 23) * oracle::modpow(16, 5, 23) % 23 == 2);
  CHECK(pedersen_commit_with(params, {sc(0), sc(0)}).c.is_identity());
}

TEST_CASE("pedersen open") {
  const auto params = PedersenParams::make(suite().group, suite().group->element(16));
  const PedersenCommitment c{suite().group->element(2)};
  CHECK(pedersen_verify_open(params, c, {sc(3), sc(5)}));
  CHECK_FALSE(pedersen_verify_open(params, c, {sc(4), sc(5)}));
  SeededRng rng(1);
  for (long v = 0; v < 11; ++v) {
    const auto [com, open] = pedersen_commit(params, sc(v), rng);
    CHECK(pedersen_verify_open(params, com, open));
  }
}

TEST_CASE("pedersen params reject the identity") {
  CHECK_THROWS_AS(PedersenParams::make(suite().group, suite().group->identity()), AlgebraError);
}

TEST_CASE("pedersen is perfectly hiding at q = 11") {
  const auto params = PedersenParams::make(suite().group, suite().group->element(16));
  for (long v = 0; v < 11; ++v) {
    std::set<mpz_class> seen;
    for (long r = 0; r < 11; ++r) seen.insert(pedersen_commit_with(params, {sc(v), sc(r)}).c.to_integer());
    CHECK(seen.size() == 11);
  }
}

TEST_CASE("elgamal commit: x = 4, value 3, r 5 gives (9, 2)") {
  const auto sender = elgamal_sender_from(suite().group, sc(4));
  CHECK(sender.h.to_integer() == 16);
  const auto c = elgamal_commit_with(suite().group, sender.h, {sc(3), sc(5)});
  CHECK(c.ca.to_integer() == 9);
  CHECK(c.cb.to_integer() == 2);
  CHECK(oracle::modpow(2, 5, 23) == 9);
  const auto zero = elgamal_commit_with(suite().group, sender.h, {sc(0), sc(0)});
  CHECK(zero.ca.is_identity());
  CHECK(zero.cb.is_identity());
}

TEST_CASE("elgamal open") {
  SeededRng rng(2);
  const auto sender = elgamal_sender_setup(suite().group, rng);
  for (long v = 0; v < 11; ++v) {
    const auto [c, open] = elgamal_commit(sender, sc(v), rng);
    CHECK(elgamal_verify_open(suite().group, c, open));
    CHECK_FALSE(elgamal_verify_open(suite().group, c, {open.value, open.randomness + sc(1)}));
  }
}

TEST_CASE("elgamal is perfectly binding at q = 11") {
  const auto sender = elgamal_sender_from(suite().group, sc(4));
  std::set<std::pair<mpz_class, mpz_class>> seen;
  for (long v = 0; v < 11; ++v) {
    for (long r = 0; r < 11; ++r) {
      const auto c = elgamal_commit_with(suite().group, sender.h, {sc(v), sc(r)});
      seen.insert({c.ca.to_integer(), c.cb.to_integer()});
    }
  }
  CHECK(seen.size() == 121);
}

TEST_CASE("pair commitments in both modes") {
  const algebra::Element h = suite().group->element(16);
  for (CommitMode mode : {CommitMode::kPedersen, CommitMode::kElGamal}) {
    const auto pc = commit_pair(mode, suite().group, h, {sc(3), sc(5)}, {sc(7), sc(1)});
    CHECK(pc.opens_to({sc(3), sc(5)}, {sc(7), sc(1)}));
    CHECK_FALSE(pc.opens_to({sc(3), sc(5)}, {sc(7), sc(2)}));
    CHECK(pc.c1.to_integer() == 2);
    CHECK(pc.c1_rand.has_value() == (mode == CommitMode::kElGamal));
  }
  CHECK(to_hex(commit_pair(CommitMode::kPedersen, suite().group, h, {sc(3), sc(5)}, {sc(0), sc(0)}).encode()) ==
        "01020101");
  CHECK(parse_commit_mode("elgamal") == CommitMode::kElGamal);
  CHECK(to_string(CommitMode::kPedersen) == "pedersen");
  CHECK_THROWS_AS(parse_commit_mode("naor"), Error);
}
