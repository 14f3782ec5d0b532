#pragma once

// Prime-order group arithmetic and the bilinear-map interface.
//
// Two element representations live behind one Group type:
//   - residue:  the order-q subgroup of Z_p^* for a safe prime p = 2q + 1
//   - exponent: the "transparent" group, where an element is stored as its
//               discrete log to the generator. Multiplication is addition
//               mod q. It has no hardness at all and exists so that every
//               algebraic identity can be checked exhaustively.

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "cnmzk/error.hpp"
#include "cnmzk/rng.hpp"

namespace cnmzk::algebra {

using Modulus = std::shared_ptr<const mpz_class>;

Modulus make_modulus(const mpz_class& q);

/// Byte width of the big-endian encoding of values in [0, m).
std::size_t byte_width(const mpz_class& m);

class Scalar {
 public:
  Scalar() = default;
  Scalar(Modulus q, const mpz_class& v);
  Scalar(Modulus q, long v) : Scalar(std::move(q), mpz_class(v)) {}

  static Scalar random(const Modulus& q, Rng& rng);
  static Scalar random_nonzero(const Modulus& q, Rng& rng);

  const mpz_class& value() const { return value_; }
  const mpz_class& modulus() const;
  const Modulus& modulus_ptr() const { return q_; }
  bool is_zero() const { return value_ == 0; }
  bool valid() const { return static_cast<bool>(q_); }

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const { return *this * o.inverse(); }
  Scalar operator-() const;
  Scalar inverse() const;

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  Bytes encode() const;
  std::string str() const { return value_.get_str(); }

 private:
  void check_compatible(const Scalar& o) const;

  mpz_class value_;
  Modulus q_;
};

enum class GroupTag : std::uint8_t { kG = 0x01, kG1 = 0x02, kG2 = 0x03, kGT = 0x04 };

std::string_view to_string(GroupTag tag);

struct SchnorrGroupParams {
  mpz_class p;
  mpz_class q;
  mpz_class g;

  /// Throws AlgebraError unless p = 2q + 1, both prime, g of order q.
  void validate() const;
  bool operator==(const SchnorrGroupParams& o) const { return p == o.p && q == o.q && g == o.g; }
};

/// The pinned desk parameters (p, q, g) = (23, 11, 2).
SchnorrGroupParams test_params();

/// Pinned parameter table keyed by bit length of q: 4 -> (23, 11, 2), 5 -> (47, 23, 4).
std::optional<SchnorrGroupParams> table_params(unsigned bits);

struct ParamSearchOptions {
  bool use_table = true;
  std::uint64_t max_attempts = 1'000'000;
};

/// Returns safe-prime parameters with |q| = bits. Table entries are returned
/// verbatim when enabled; otherwise a seeded search runs.
SchnorrGroupParams gen_schnorr_params(unsigned bits, Rng& rng, ParamSearchOptions opts = {});

class Group;
using GroupPtr = std::shared_ptr<const Group>;

class Element {
 public:
  Element() = default;

  const GroupPtr& group() const { return group_; }
  GroupTag tag() const;
  const mpz_class& value() const { return value_; }
  bool valid() const { return static_cast<bool>(group_); }

  Element operator*(const Element& o) const;
  Element operator/(const Element& o) const { return *this * o.inverse(); }
  Element pow(const Scalar& k) const;
  Element inverse() const;
  bool is_identity() const;

  /// Integer representation, i.e. the canonical value without the group tag.
  const mpz_class& to_integer() const { return value_; }

  bool operator==(const Element& o) const;
  bool operator!=(const Element& o) const { return !(*this == o); }

  /// Group tag byte followed by the fixed-width big-endian value.
  Bytes encode() const;

 private:
  friend class Group;
  Element(GroupPtr g, mpz_class v) : group_(std::move(g)), value_(std::move(v)) {}
  void check_same_group(const Element& o) const;

  GroupPtr group_;
  mpz_class value_;
};

class Group : public std::enable_shared_from_this<Group> {
 public:
  enum class Kind { kResidue, kExponent };

  static GroupPtr residue(GroupTag tag, const SchnorrGroupParams& params);
  static GroupPtr exponent(GroupTag tag, const mpz_class& q);

  GroupTag tag() const { return tag_; }
  Kind kind() const { return kind_; }
  const mpz_class& order() const { return *q_; }
  const Modulus& order_ptr() const { return q_; }
  /// p for residue groups, q for the transparent group.
  const mpz_class& modulus() const { return modulus_; }
  std::size_t width() const { return width_; }

  Element generator() const;
  Element identity() const;
  /// Validates membership; throws AlgebraError on failure.
  Element element(const mpz_class& repr) const;
  bool contains(const mpz_class& repr) const;

  Scalar scalar(const mpz_class& v) const { return Scalar(q_, v); }
  Scalar scalar(long v) const { return Scalar(q_, v); }
  Scalar random_scalar(Rng& rng) const { return Scalar::random(q_, rng); }
  Scalar random_nonzero(Rng& rng) const { return Scalar::random_nonzero(q_, rng); }

  /// True when both describe the same set with the same tag.
  bool same_as(const Group& o) const;

  /// Discrete log to the generator. Always available on the transparent
  /// group; on residue groups only for orders below 2^40 (baby-step giant-step).
  std::optional<Scalar> dlog(const Element& e) const;

 private:
  struct DlogTable;
  Group(GroupTag tag, Kind kind, mpz_class modulus, mpz_class q, mpz_class gen);

  friend class Element;
  friend class PairingBackend;
  Element make(mpz_class v) const { return Element(shared_from_this(), std::move(v)); }

  GroupTag tag_;
  Kind kind_;
  mpz_class modulus_;
  Modulus q_;
  mpz_class gen_;
  std::size_t width_;
  mutable std::once_flag dlog_once_;
  mutable std::shared_ptr<const DlogTable> dlog_table_;
};

/// Per-thread operation counters used for cost accounting.
struct OpCounts {
  std::uint64_t exponentiations = 0;
  std::uint64_t pairings = 0;
};

OpCounts op_counts();

class CountScope {
 public:
  CountScope() : start_(op_counts()) {}
  OpCounts delta() const;

 private:
  OpCounts start_;
};

/// Bilinear map e: G1 x G2 -> GT over groups of a common prime order.
///
/// transparent: all three groups are exponent groups, so e(a, b) multiplies
///              discrete logs. No security whatsoever.
/// schnorr:     all three groups are the order-q subgroup of Z_p^* under
///              distinct tags, and e(a, b) = g^(dlog a * dlog b) with logs
///              found by baby-step giant-step. Real modular representation,
///              toy sizes only.
class PairingBackend {
 public:
  enum class Kind { kTransparent, kSchnorr };

  PairingBackend() = default;
  static PairingBackend transparent(const mpz_class& q);
  static PairingBackend schnorr(const SchnorrGroupParams& params);

  Kind kind() const { return kind_; }
  std::string name() const;
  const GroupPtr& g1() const { return g1_; }
  const GroupPtr& g2() const { return g2_; }
  const GroupPtr& gt() const { return gt_; }
  const mpz_class& order() const { return g1_->order(); }

  Element pair(const Element& a, const Element& b) const;
  /// Isomorphism G2 -> G1 with psi(g2) = g1.
  Element psi(const Element& b) const;

 private:
  Kind kind_ = Kind::kTransparent;
  GroupPtr g1_, g2_, gt_;
};

/// Everything a session needs: the commitment group G and the pairing groups,
/// all of the same prime order q.
struct Suite {
  GroupPtr group;
  PairingBackend pairing;

  static Suite make(const SchnorrGroupParams& params, PairingBackend::Kind kind);

  const mpz_class& order() const { return group->order(); }
  const Modulus& order_ptr() const { return group->order_ptr(); }
  /// Challenge length: bitlen(q) - 1, so that challenges embed in Z_q.
  unsigned challenge_bits() const;
  GroupPtr by_tag(GroupTag tag) const;
  SchnorrGroupParams params() const;
};

}  // namespace cnmzk::algebra
