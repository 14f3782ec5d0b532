#include "cnmzk/commitments.hpp"

#include "cnmzk/codec.hpp"

namespace cnmzk::commit {
namespace {

Scalar draw_nonzero(const GroupPtr& group, Rng& rng) {
  for (;;) {
    Scalar x = group->random_scalar(rng);
    if (!x.is_zero()) return x;
  }
}

}  // namespace

PedersenParams PedersenParams::make(GroupPtr group, const Element& h) {
  if (!h.valid() || !h.group()->same_as(*group)) throw AlgebraError("pedersen base must lie in G");
  if (h.is_identity()) throw AlgebraError("pedersen base must not be the identity");
  return {std::move(group), h};
}

std::pair<PedersenParams, Scalar> pedersen_receiver_setup(const GroupPtr& group, Rng& rng) {
  Scalar x = draw_nonzero(group, rng);
  return {PedersenParams::make(group, group->generator().pow(x)), x};
}

std::pair<PedersenCommitment, Opening> pedersen_commit(const PedersenParams& params, const Scalar& value,
                                                       Rng& rng) {
  Opening open{value, params.group->random_scalar(rng)};
  return {pedersen_commit_with(params, open), open};
}

PedersenCommitment pedersen_commit_with(const PedersenParams& params, const Opening& open) {
  return {params.group->generator().pow(open.value) * params.h.pow(open.randomness)};
}

bool pedersen_verify_open(const PedersenParams& params, const PedersenCommitment& c, const Opening& open) {
  try {
    return pedersen_commit_with(params, open).c == c.c;
  } catch (const Error&) {
    return false;
  }
}

ElGamalSender elgamal_sender_setup(const GroupPtr& group, Rng& rng) {
  return elgamal_sender_from(group, draw_nonzero(group, rng));
}

ElGamalSender elgamal_sender_from(const GroupPtr& group, const Scalar& x) {
  if (x.is_zero()) throw AlgebraError("elgamal sender exponent must be nonzero");
  return {group, x, group->generator().pow(x)};
}

std::pair<ElGamalCommitment, Opening> elgamal_commit(const ElGamalSender& sender, const Scalar& value, Rng& rng) {
  Opening open{value, sender.group->random_scalar(rng)};
  return {elgamal_commit_with(sender.group, sender.h, open), open};
}

ElGamalCommitment elgamal_commit_with(const GroupPtr& group, const Element& h, const Opening& open) {
  const Element g = group->generator();
  return {g.pow(open.randomness), g.pow(open.value) * h.pow(open.randomness), h};
}

bool elgamal_verify_open(const GroupPtr& group, const ElGamalCommitment& c, const Opening& open) {
  try {
    const ElGamalCommitment again = elgamal_commit_with(group, c.h, open);
    return again.ca == c.ca && again.cb == c.cb;
  } catch (const Error&) {
    return false;
  }
}

std::string_view to_string(CommitMode mode) { return mode == CommitMode::kPedersen ? "pedersen" : "elgamal"; }

CommitMode parse_commit_mode(std::string_view name) {
  if (name == "pedersen") return CommitMode::kPedersen;
  if (name == "elgamal") return CommitMode::kElGamal;
  throw Error("unknown commitment mode: " + std::string(name));
}

bool PairCommitment::opens_to(const Opening& first, const Opening& second) const {
  try {
    const PairCommitment again = commit_pair(mode, group, h, first, second);
    return again.c1 == c1 && again.c2 == c2 && again.c1_rand == c1_rand && again.c2_rand == c2_rand;
  } catch (const Error&) {
    return false;
  }
}

Bytes PairCommitment::encode() const {
  Writer w;
  if (mode == CommitMode::kPedersen) {
    w.element(c1).element(c2);
  } else {
    w.element(h).element(*c1_rand).element(c1).element(*c2_rand).element(c2);
  }
  return std::move(w).bytes();
}

PairCommitment commit_pair(CommitMode mode, const GroupPtr& group, const Element& h, const Opening& first,
                           const Opening& second) {
  PairCommitment out;
  out.mode = mode;
  out.group = group;
  out.h = h;
  if (mode == CommitMode::kPedersen) {
    const PedersenParams params = PedersenParams::make(group, h);
    out.c1 = pedersen_commit_with(params, first).c;
    out.c2 = pedersen_commit_with(params, second).c;
  } else {
    const ElGamalCommitment a = elgamal_commit_with(group, h, first);
    const ElGamalCommitment b = elgamal_commit_with(group, h, second);
    out.c1 = a.cb;
    out.c1_rand = a.ca;
    out.c2 = b.cb;
    out.c2_rand = b.ca;
  }
  return out;
}

}  // namespace cnmzk::commit
