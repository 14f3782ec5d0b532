#pragma once

// Proof that a committed pair (s1, s2) is a Boneh-Boyen signature (sigma, r)
// on a public message m, with s1 the integer form of sigma reduced mod q.
//
// Honest prover, Pedersen mode (w1..w4 <- Zq, t <- Zq*):
//   M1 = g^w1 h^w2   M2 = g^w3 h^w4   F = sigma^t   D = F^s1   E = F^-w1
//   A = v^r          B = v^w3
//   y1 = w1 + e s1   z1 = w2 + e r1   y2 = w3 + e r   z2 = w4 + e r2
// Verification, each line the inverse of one simulator assignment:
//   (i)   g^y1 h^z1 = M1 C1^e
//   (ii)  g^y2 h^z2 = M2 C2^e
//   (iii) v^y2 = B A^e
//   (iv)  F^y1 E = D^e
//   (v)   e(F, u g2^m A) = z^t,  t != 0
// ElGamal mode commits (g^r1, g^s1 h^r1) and adds N1 = g^w2, N2 = g^w4 with
// g^z1 = N1 C11^e and g^z2 = N2 C21^e; (i), (ii) use the value halves.

#include <utility>

#include "cnmzk/sigma.hpp"

namespace cnmzk::sigstmt {

using algebra::Element;
using algebra::Scalar;
using sigma::Challenge;

struct Stmt2Instance {
  algebra::Suite suite;
  commit::PairCommitment com;
  sig::BBVerKey vk;
  Scalar m;
};

using Stmt2Witness = sigma::SignatureWitness;

struct Stmt2FirstMsg {
  Element A, B, D, E, F, M1, M2;
  Scalar t;
  std::optional<Element> N1, N2;

  /// Field order: A, B, D, E, F, M1, M2, t, then N1, N2 in ElGamal mode.
  sigma::Payload to_payload() const;
  static Stmt2FirstMsg from_payload(const sigma::Payload& p, commit::CommitMode mode);
};

struct Stmt2Response {
  Scalar y1, y2, z1, z2;

  sigma::Payload to_payload() const { return {y1, y2, z1, z2}; }
  static Stmt2Response from_payload(const sigma::Payload& p);
};

struct Stmt2ProverState {
  Stmt2Witness wit;
  Scalar s1;
  Scalar w1, w2, w3, w4, t;
  Stmt2FirstMsg first;
};

/// Commitment openings plus the signature check.
bool stmt2_holds(const Stmt2Instance& inst, const Stmt2Witness& wit);

std::pair<Stmt2FirstMsg, Stmt2ProverState> stmt2_prove_first(const Stmt2Instance& inst, const Stmt2Witness& wit,
                                                             Rng& rng);
std::pair<Stmt2FirstMsg, Stmt2ProverState> stmt2_prove_first_with(const Stmt2Instance& inst,
                                                                  const Stmt2Witness& wit, const Scalar& w1,
                                                                  const Scalar& w2, const Scalar& w3,
                                                                  const Scalar& w4, const Scalar& t);
Stmt2Response stmt2_respond(const Stmt2ProverState& state, const Challenge& e);
bool stmt2_verify(const Stmt2Instance& inst, const Stmt2FirstMsg& first, const Challenge& e,
                  const Stmt2Response& resp);
/// Draw order: s, t, y1, y2, z1, z2.
std::pair<Stmt2FirstMsg, Stmt2Response> stmt2_simulate(const Stmt2Instance& inst, const Challenge& e, Rng& rng);
/// Throws ExtractionError on bad preconditions and ExtractionMismatch when
/// the candidate fails stmt2_holds.
Stmt2Witness stmt2_extract(const Stmt2Instance& inst, const Stmt2FirstMsg& first, const Challenge& e1,
                           const Stmt2Response& r1, const Challenge& e2, const Stmt2Response& r2);

class Stmt2Protocol final : public sigma::SigmaProtocol {
 public:
  explicit Stmt2Protocol(Stmt2Instance inst);

  std::string name() const override;
  unsigned challenge_bits() const override { return inst_.suite.challenge_bits(); }
  std::size_t first_size() const override;
  std::size_t response_size() const override { return 4; }
  bool holds(const sigma::Witness& w) const override;
  std::unique_ptr<sigma::ProverSession> prove(const sigma::Witness& w, Rng& rng) const override;
  sigma::Transcript simulate(const Challenge& e, Rng& rng) const override;
  bool verify(const sigma::Transcript& t) const override;
  sigma::Witness extract(const sigma::Transcript& t1, const sigma::Transcript& t2) const override;
  sigma::Payload read_first(Reader& in) const override;
  sigma::Payload read_response(Reader& in) const override;

  const Stmt2Instance& instance() const { return inst_; }

 private:
  Stmt2Instance inst_;
};

/// OR of two Stmt2 instances that share the commitment and message.
std::shared_ptr<const sigma::OrProtocol> stmt1_or(const algebra::Suite& suite, const sig::BBVerKey& vk0,
                                                  const sig::BBVerKey& vk1, const commit::PairCommitment& com,
                                                  const Scalar& m);

}  // namespace cnmzk::sigstmt
