#pragma once

// Exhaustive transcript distributions at q = 11.

#include "cnmzk/sigstmt.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"
#include "support/stmt2_fixture.hpp"

namespace fixtures {

using Dist = oracle::Distribution<std::uint64_t>;

inline Dist real_transcripts(const cnmzk::sigma::SigmaProtocol& p, const cnmzk::sigma::Witness& w,
                             const cnmzk::sigma::Challenge& e) {
  return oracle::enumerate<std::uint64_t>([&](cnmzk::Rng& rng) -> std::optional<std::uint64_t> {
    const auto session = p.prove(w, rng);
    return pack(session->respond(e), pack(session->first()));
  });
}

/// Rejecting simulations are dropped, so a faulty simulator shows up as a
/// distribution mismatch.
inline Dist simulated_transcripts(const cnmzk::sigma::SigmaProtocol& p, const cnmzk::sigma::Challenge& e) {
  return oracle::enumerate<std::uint64_t>([&](cnmzk::Rng& rng) -> std::optional<std::uint64_t> {
    const cnmzk::sigma::Transcript t = p.simulate(e, rng);
    if (!p.verify(t)) return std::nullopt;
    return pack(t.z, pack(t.a));
  });
}

struct Stmt2Enumeration {
  Dist real, simulated;
};

/// Pedersen mode on the transparent backend. Every signature on m is a
/// witness for the same commitment once the openings are recomputed with the
/// trapdoor, so the honest side enumerates r over all of Zq.
inline Stmt2Enumeration stmt2_pedersen_enumeration(long challenge) {
  using namespace cnmzk;
  using algebra::Scalar;
  const algebra::Suite s = transparent();
  const auto q = s.order_ptr();
  SeededRng setup(17);
  const Stmt2Case base = random_stmt2_case(s, commit::CommitMode::kPedersen, setup);
  const sigstmt::Stmt2Protocol proto(base.inst);
  const Scalar s1_base = sig::ceil_repr(base.wit.sig.sigma, q);
  const sigma::Challenge e(s.challenge_bits(), challenge);

  Stmt2Enumeration out;
  out.real = oracle::enumerate<std::uint64_t>([&](Rng& rng) -> std::optional<std::uint64_t> {
    const Scalar r(q, rng.below(*q));
    if ((base.kp.sk.x + base.inst.m + base.kp.sk.y * r).is_zero()) return std::nullopt;
    const sig::BBSignature sg = sig::bb_sign_with(s.pairing, base.kp.sk, base.inst.m, r);
    const Scalar s1 = sig::ceil_repr(sg.sigma, q);
    sigma::SignatureWitness wit{sg, base.wit.r1 + (s1_base - s1) / base.trapdoor,
                                base.wit.r2 + (base.wit.sig.r - r) / base.trapdoor};
    auto [first, state] = sigstmt::stmt2_prove_first(base.inst, wit, rng);
    return pack(sigstmt::stmt2_respond(state, e).to_payload(), pack(first.to_payload()));
  });
  out.simulated = simulated_transcripts(proto, e);
  return out;
}

}  // namespace fixtures
