#pragma once

#include <optional>
#include <utility>

#include "cnmzk/algebra.hpp"

namespace cnmzk::commit {

using algebra::Element;
using algebra::GroupPtr;
using algebra::Scalar;

struct Opening {
  Scalar value;
  Scalar randomness;
};

struct PedersenParams {
  GroupPtr group;
  Element h;

  /// Rejects h outside the group or equal to the identity.
  static PedersenParams make(GroupPtr group, const Element& h);
};

struct PedersenCommitment {
  Element c;
};

/// Receiver side: x <- Zq, redrawn while zero; h = g^x. Returns (params, x).
std::pair<PedersenParams, Scalar> pedersen_receiver_setup(const GroupPtr& group, Rng& rng);

/// C = g^value h^r for a fresh r <- Zq.
std::pair<PedersenCommitment, Opening> pedersen_commit(const PedersenParams& params, const Scalar& value,
                                                       Rng& rng);
PedersenCommitment pedersen_commit_with(const PedersenParams& params, const Opening& open);
bool pedersen_verify_open(const PedersenParams& params, const PedersenCommitment& c, const Opening& open);

/// Sender-chosen base for the non-interactive scheme.
struct ElGamalSender {
  GroupPtr group;
  Scalar x;
  Element h;
};

ElGamalSender elgamal_sender_setup(const GroupPtr& group, Rng& rng);
ElGamalSender elgamal_sender_from(const GroupPtr& group, const Scalar& x);

struct ElGamalCommitment {
  Element ca;  // g^r
  Element cb;  // g^value h^r
  Element h;
};

std::pair<ElGamalCommitment, Opening> elgamal_commit(const ElGamalSender& sender, const Scalar& value, Rng& rng);
ElGamalCommitment elgamal_commit_with(const GroupPtr& group, const Element& h, const Opening& open);
bool elgamal_verify_open(const GroupPtr& group, const ElGamalCommitment& c, const Opening& open);

enum class CommitMode { kPedersen, kElGamal };

std::string_view to_string(CommitMode mode);
CommitMode parse_commit_mode(std::string_view name);

/// Two commitments under one base h, as used for a signature (s1, s2).
/// Pedersen: c1, c2 are the commitments. ElGamal: c1, c2 are the value halves
/// g^s h^r and c1_rand, c2_rand the g^r halves.
struct PairCommitment {
  CommitMode mode = CommitMode::kPedersen;
  GroupPtr group;
  Element h;
  Element c1, c2;
  std::optional<Element> c1_rand, c2_rand;

  bool opens_to(const Opening& first, const Opening& second) const;
  Bytes encode() const;
};

PairCommitment commit_pair(CommitMode mode, const GroupPtr& group, const Element& h, const Opening& first,
                           const Opening& second);

}  // namespace cnmzk::commit
