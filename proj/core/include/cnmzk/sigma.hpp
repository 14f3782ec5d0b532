#pragma once

// Three-move public-coin proofs of knowledge.
//
// A SigmaProtocol is bound to one statement. prove() draws the prover's
// randomness and fixes the first message; the returned ProverSession can then
// answer any number of challenges, which is what the extractors rely on.

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "cnmzk/algebra.hpp"
#include "cnmzk/codec.hpp"
#include "cnmzk/commitments.hpp"
#include "cnmzk/signatures.hpp"

namespace cnmzk::sigma {

using algebra::Element;
using algebra::GroupPtr;
using algebra::Modulus;
using algebra::Scalar;

/// An l-bit string. XOR-closed and, since l = bitlen(q) - 1, embeds in Zq.
class Challenge {
 public:
  Challenge() = default;
  Challenge(unsigned bits, const mpz_class& value);

  static Challenge random(unsigned bits, Rng& rng);
  static Challenge zero(unsigned bits) { return Challenge(bits, 0); }

  unsigned bits() const { return bits_; }
  const mpz_class& value() const { return value_; }
  Scalar to_scalar(const Modulus& q) const;

  Challenge operator^(const Challenge& o) const;
  bool operator==(const Challenge& o) const { return bits_ == o.bits_ && value_ == o.value_; }
  bool operator!=(const Challenge& o) const { return !(*this == o); }

  Bytes encode() const;
  static Challenge decode(Reader& in, unsigned bits);
  static std::size_t width(unsigned bits) { return (bits + 7) / 8; }

 private:
  unsigned bits_ = 0;
  mpz_class value_;
};

using Field = std::variant<Element, Scalar, Challenge>;
using Payload = std::vector<Field>;

Bytes encode(const Payload& payload);
bool operator==(const Field& a, const Field& b);

const Element& element_at(const Payload& p, std::size_t i);
const Scalar& scalar_at(const Payload& p, std::size_t i);
const Challenge& challenge_at(const Payload& p, std::size_t i);

struct Transcript {
  Payload a;
  Challenge e;
  Payload z;

  /// a, e, z concatenated via canonical encodings.
  Bytes encode() const;
};

// ---------------------------------------------------------------- witnesses

struct DlogWitness {
  Scalar w;
};

struct DlPairWitness {
  Scalar x, y;
};

/// (sigma, r) together with the commitment randomness (r1, r2).
struct SignatureWitness {
  sig::BBSignature sig;
  Scalar r1, r2;
};

struct Witness;

struct OrWitness {
  std::size_t branch = 0;
  std::shared_ptr<const Witness> inner;
};

struct Witness {
  using Variant = std::variant<DlogWitness, DlPairWitness, commit::Opening, SignatureWitness, OrWitness>;
  Variant v;

  Witness(DlogWitness w) : v(std::move(w)) {}
  Witness(DlPairWitness w) : v(std::move(w)) {}
  Witness(commit::Opening w) : v(std::move(w)) {}
  Witness(SignatureWitness w) : v(std::move(w)) {}
  Witness(OrWitness w) : v(std::move(w)) {}

  template <class T>
  const T* get() const {
    return std::get_if<T>(&v);
  }
};

Witness or_witness(std::size_t branch, Witness inner);

// ---------------------------------------------------------------- interface

class ProverSession {
 public:
  virtual ~ProverSession() = default;
  virtual const Payload& first() const = 0;
  virtual Payload respond(const Challenge& e) const = 0;
  virtual std::unique_ptr<ProverSession> clone() const = 0;
};

/// Owning pointer to a ProverSession that deep-copies on copy.
class SessionHandle {
 public:
  SessionHandle() = default;
  SessionHandle(std::unique_ptr<ProverSession> s) : s_(std::move(s)) {}
  SessionHandle(const SessionHandle& o) : s_(o.s_ ? o.s_->clone() : nullptr) {}
  SessionHandle& operator=(const SessionHandle& o) {
    if (this != &o) s_ = o.s_ ? o.s_->clone() : nullptr;
    return *this;
  }
  SessionHandle(SessionHandle&&) noexcept = default;
  SessionHandle& operator=(SessionHandle&&) noexcept = default;

  ProverSession* operator->() const { return s_.get(); }
  ProverSession& operator*() const { return *s_; }
  explicit operator bool() const { return static_cast<bool>(s_); }

 private:
  std::unique_ptr<ProverSession> s_;
};

class SigmaProtocol {
 public:
  virtual ~SigmaProtocol() = default;

  virtual std::string name() const = 0;
  virtual unsigned challenge_bits() const = 0;
  virtual std::size_t first_size() const = 0;
  virtual std::size_t response_size() const = 0;

  /// Relation predicate.
  virtual bool holds(const Witness& w) const = 0;
  /// Throws Error if the witness does not satisfy the relation.
  virtual std::unique_ptr<ProverSession> prove(const Witness& w, Rng& rng) const = 0;
  virtual Transcript simulate(const Challenge& e, Rng& rng) const = 0;
  /// Never throws; malformed transcripts are rejected.
  virtual bool verify(const Transcript& t) const = 0;
  /// Raw special-soundness algebra. Callers use extract_special_soundness.
  virtual Witness extract(const Transcript& t1, const Transcript& t2) const = 0;

  virtual Payload read_first(Reader& in) const = 0;
  virtual Payload read_response(Reader& in) const = 0;

  /// True when the first message is computable without a witness: the
  /// protocol can open a simulated transcript into a live prover session.
  virtual bool partially_witness_independent() const { return false; }
  virtual std::unique_ptr<ProverSession> resume(const Transcript& simulated, const Witness& w) const;

  double knowledge_error() const;
};

using ProtocolPtr = std::shared_ptr<const SigmaProtocol>;

/// Checks the preconditions (shared a, distinct e, both accepting) and the
/// relation on the result. Throws ExtractionError / ExtractionMismatch.
Witness extract_special_soundness(const SigmaProtocol& proto, const Transcript& t1, const Transcript& t2);

// ---------------------------------------------------------------- base protocols

/// {(X; w) : X = base^w}
class SchnorrDl final : public SigmaProtocol {
 public:
  SchnorrDl(Element base, Element x, unsigned bits);

  std::string name() const override { return "schnorr_dl"; }
  unsigned challenge_bits() const override { return bits_; }
  std::size_t first_size() const override { return 1; }
  std::size_t response_size() const override { return 1; }
  bool holds(const Witness& w) const override;
  std::unique_ptr<ProverSession> prove(const Witness& w, Rng& rng) const override;
  Transcript simulate(const Challenge& e, Rng& rng) const override;
  bool verify(const Transcript& t) const override;
  Witness extract(const Transcript& t1, const Transcript& t2) const override;
  Payload read_first(Reader& in) const override;
  Payload read_response(Reader& in) const override;
  bool partially_witness_independent() const override { return true; }
  std::unique_ptr<ProverSession> resume(const Transcript& simulated, const Witness& w) const override;

  std::unique_ptr<ProverSession> prove_with(const Scalar& w, const Scalar& t) const;
  const Element& statement() const { return x_; }

 private:
  Element base_, x_;
  unsigned bits_;
};

/// {((u, v); (x, y)) : u = base^x and v = base^y}
class DlPair final : public SigmaProtocol {
 public:
  DlPair(Element base, Element u, Element v, unsigned bits);

  std::string name() const override { return "dl_pair"; }
  unsigned challenge_bits() const override { return bits_; }
  std::size_t first_size() const override { return 2; }
  std::size_t response_size() const override { return 2; }
  bool holds(const Witness& w) const override;
  std::unique_ptr<ProverSession> prove(const Witness& w, Rng& rng) const override;
  Transcript simulate(const Challenge& e, Rng& rng) const override;
  bool verify(const Transcript& t) const override;
  Witness extract(const Transcript& t1, const Transcript& t2) const override;
  Payload read_first(Reader& in) const override;
  Payload read_response(Reader& in) const override;
  bool partially_witness_independent() const override { return true; }
  std::unique_ptr<ProverSession> resume(const Transcript& simulated, const Witness& w) const override;

 private:
  Element base_, u_, v_;
  unsigned bits_;
};

/// {(C; (y, r)) : C = g^y h^r}
class PedersenOpenPok final : public SigmaProtocol {
 public:
  PedersenOpenPok(commit::PedersenParams params, Element c, unsigned bits);

  std::string name() const override { return "pedersen_open_pok"; }
  unsigned challenge_bits() const override { return bits_; }
  std::size_t first_size() const override { return 1; }
  std::size_t response_size() const override { return 2; }
  bool holds(const Witness& w) const override;
  std::unique_ptr<ProverSession> prove(const Witness& w, Rng& rng) const override;
  Transcript simulate(const Challenge& e, Rng& rng) const override;
  bool verify(const Transcript& t) const override;
  Witness extract(const Transcript& t1, const Transcript& t2) const override;
  Payload read_first(Reader& in) const override;
  Payload read_response(Reader& in) const override;
  bool partially_witness_independent() const override { return true; }
  std::unique_ptr<ProverSession> resume(const Transcript& simulated, const Witness& w) const override;

  std::unique_ptr<ProverSession> prove_with(const commit::Opening& open, const Scalar& w1, const Scalar& w2) const;

 private:
  commit::PedersenParams params_;
  Element c_;
  unsigned bits_;
};

// ---------------------------------------------------------------- OR

/// n-ary OR: e = e_1 xor ... xor e_n; the response carries every e_i.
///
/// kClassic:  the known branch runs its prover; the others are simulated.
/// kWitnessIndependent: every branch is simulated up front, and the known
///   branch's simulated transcript is reopened at response time. The first
///   message then depends only on the random tape. Requires every branch to
///   be partially witness independent.
class OrProtocol final : public SigmaProtocol {
 public:
  enum class Strategy { kClassic, kWitnessIndependent };

  OrProtocol(std::vector<ProtocolPtr> branches, Strategy strategy = Strategy::kClassic);

  std::string name() const override;
  unsigned challenge_bits() const override { return bits_; }
  std::size_t first_size() const override;
  std::size_t response_size() const override;
  bool holds(const Witness& w) const override;
  /// w must be an OrWitness naming the known branch (0-based).
  std::unique_ptr<ProverSession> prove(const Witness& w, Rng& rng) const override;
  Transcript simulate(const Challenge& e, Rng& rng) const override;
  bool verify(const Transcript& t) const override;
  /// Returns an OrWitness for the first branch whose sub-challenges differ.
  Witness extract(const Transcript& t1, const Transcript& t2) const override;
  Payload read_first(Reader& in) const override;
  Payload read_response(Reader& in) const override;

  /// First message with every branch simulated; the session cannot respond.
  std::unique_ptr<ProverSession> commit_blind(Rng& rng) const;

  const std::vector<ProtocolPtr>& branches() const { return branches_; }
  Strategy strategy() const { return strategy_; }

  /// Splits a composed transcript into per-branch transcripts.
  std::vector<Transcript> split(const Transcript& t) const;

 private:
  std::vector<ProtocolPtr> branches_;
  Strategy strategy_;
  unsigned bits_;
};

}  // namespace cnmzk::sigma
