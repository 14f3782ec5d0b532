#include "cnmzk/algebra.hpp"

#include <cmath>
#include <mutex>
#include <unordered_map>

#include "cnmzk/codec.hpp"

namespace cnmzk::algebra {
namespace {

thread_local OpCounts t_counts;

bool is_probable_prime(const mpz_class& n) { return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0; }

mpz_class powm(const mpz_class& base, const mpz_class& exp, const mpz_class& mod) {
  mpz_class out;
  mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
  return out;
}

std::uint64_t to_u64(const mpz_class& v) {
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, v.get_mpz_t());
  return out;
}

__extension__ using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<u128>(a) * b) % m);
}

constexpr unsigned kMaxDlogBits = 40;

}  // namespace

Modulus make_modulus(const mpz_class& q) { return std::make_shared<const mpz_class>(q); }

std::size_t byte_width(const mpz_class& m) {
  if (m <= 1) return 1;
  const mpz_class top = m - 1;
  const std::size_t bits = mpz_sizeinbase(top.get_mpz_t(), 2);
  return (bits + 7) / 8;
}

// ---------------------------------------------------------------- Scalar

Scalar::Scalar(Modulus q, const mpz_class& v) : q_(std::move(q)) {
  if (!q_ || *q_ <= 1) throw AlgebraError("scalar modulus must exceed 1");
  mpz_mod(value_.get_mpz_t(), v.get_mpz_t(), q_->get_mpz_t());
}

Scalar Scalar::random(const Modulus& q, Rng& rng) { return Scalar(q, rng.below(*q)); }

Scalar Scalar::random_nonzero(const Modulus& q, Rng& rng) { return Scalar(q, rng.nonzero_below(*q)); }

const mpz_class& Scalar::modulus() const {
  if (!q_) throw AlgebraError("uninitialised scalar");
  return *q_;
}

void Scalar::check_compatible(const Scalar& o) const {
  if (!q_ || !o.q_) throw AlgebraError("uninitialised scalar");
  if (q_ != o.q_ && *q_ != *o.q_) throw AlgebraError("scalars from different moduli");
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_compatible(o);
  return Scalar(q_, value_ + o.value_);
}

Scalar Scalar::operator-(const Scalar& o) const {
  check_compatible(o);
  return Scalar(q_, value_ - o.value_);
}

Scalar Scalar::operator*(const Scalar& o) const {
  check_compatible(o);
  return Scalar(q_, value_ * o.value_);
}

Scalar Scalar::operator-() const { return Scalar(q_, -value_); }

Scalar Scalar::inverse() const {
  if (!q_) throw AlgebraError("uninitialised scalar");
  if (value_ == 0) throw AlgebraError("inverse of zero");
  mpz_class out;
  if (mpz_invert(out.get_mpz_t(), value_.get_mpz_t(), q_->get_mpz_t()) == 0) {
    throw AlgebraError("scalar not invertible");
  }
  return Scalar(q_, out);
}

bool Scalar::operator==(const Scalar& o) const {
  if (!q_ || !o.q_) return !q_ && !o.q_;
  return value_ == o.value_ && (q_ == o.q_ || *q_ == *o.q_);
}

Bytes Scalar::encode() const { return encode_fixed(value_, byte_width(modulus())); }

// ---------------------------------------------------------------- params

std::string_view to_string(GroupTag tag) {
  switch (tag) {
    case GroupTag::kG: return "G";
    case GroupTag::kG1: return "G1";
    case GroupTag::kG2: return "G2";
    case GroupTag::kGT: return "GT";
  }
  return "?";
}

void SchnorrGroupParams::validate() const {
  if (p != 2 * q + 1) throw AlgebraError("p != 2q + 1");
  if (!is_probable_prime(q)) throw AlgebraError("q is not prime");
  if (!is_probable_prime(p)) throw AlgebraError("p is not prime");
  if (g <= 1 || g >= p) throw AlgebraError("generator out of range");
  if (powm(g, q, p) != 1) throw AlgebraError("g does not have order q");
}

SchnorrGroupParams test_params() { return {23, 11, 2}; }

std::optional<SchnorrGroupParams> table_params(unsigned bits) {
  switch (bits) {
    case 4: return SchnorrGroupParams{23, 11, 2};
    case 5: return SchnorrGroupParams{47, 23, 4};
    default: return std::nullopt;
  }
}

SchnorrGroupParams gen_schnorr_params(unsigned bits, Rng& rng, ParamSearchOptions opts) {
  if (bits < 4) throw AlgebraError("gen_schnorr_params: bits must be >= 4");
  if (opts.use_table) {
    if (auto pinned = table_params(bits)) {
      pinned->validate();
      return *pinned;
    }
  }
  mpz_class low = 1;
  low <<= (bits - 1);
  for (std::uint64_t attempt = 0; attempt < opts.max_attempts; ++attempt) {
    mpz_class q = low + rng.below(low);
    q |= 1;
    if (!is_probable_prime(q)) continue;
    mpz_class p = 2 * q + 1;
    if (!is_probable_prime(p)) continue;
    for (;;) {
      mpz_class h = 2 + rng.below(p - 3);
      mpz_class g = powm(h, 2, p);
      if (g != 1) {
        SchnorrGroupParams out{p, q, g};
        out.validate();
        return out;
      }
    }
  }
  throw AlgebraError("gen_schnorr_params: attempt bound exhausted");
}

// ---------------------------------------------------------------- Group

struct Group::DlogTable {
  std::uint64_t p = 0;
  std::uint64_t m = 0;
  std::uint64_t giant = 0;  // g^{-m}
  std::unordered_map<std::uint64_t, std::uint64_t> baby;
};

Group::Group(GroupTag tag, Kind kind, mpz_class modulus, mpz_class q, mpz_class gen)
    : tag_(tag),
      kind_(kind),
      modulus_(std::move(modulus)),
      q_(make_modulus(q)),
      gen_(std::move(gen)),
      width_(byte_width(modulus_)) {}

GroupPtr Group::residue(GroupTag tag, const SchnorrGroupParams& params) {
  params.validate();
  return GroupPtr(new Group(tag, Kind::kResidue, params.p, params.q, params.g));
}

GroupPtr Group::exponent(GroupTag tag, const mpz_class& q) {
  if (q <= 2 || !is_probable_prime(q)) throw AlgebraError("transparent group order must be an odd prime");
  return GroupPtr(new Group(tag, Kind::kExponent, q, q, 1));
}

Element Group::generator() const { return make(gen_); }

Element Group::identity() const { return make(kind_ == Kind::kResidue ? 1 : 0); }

bool Group::contains(const mpz_class& repr) const {
  if (kind_ == Kind::kExponent) return repr >= 0 && repr < *q_;
  if (repr < 1 || repr >= modulus_) return false;
  // Quadratic residues mod a safe prime are exactly the order-q subgroup.
  return mpz_jacobi(repr.get_mpz_t(), modulus_.get_mpz_t()) == 1;
}

Element Group::element(const mpz_class& repr) const {
  if (!contains(repr)) {
    throw AlgebraError("value " + repr.get_str() + " is not in group " + std::string(to_string(tag_)));
  }
  return make(repr);
}

bool Group::same_as(const Group& o) const {
  return this == &o || (tag_ == o.tag_ && kind_ == o.kind_ && modulus_ == o.modulus_ &&
                        *q_ == *o.q_ && gen_ == o.gen_);
}

std::optional<Scalar> Group::dlog(const Element& e) const {
  if (!e.group_ || !same_as(*e.group_)) throw AlgebraError("dlog: element from another group");
  if (kind_ == Kind::kExponent) return Scalar(q_, e.value_);
  if (mpz_sizeinbase(q_->get_mpz_t(), 2) > kMaxDlogBits) return std::nullopt;

  std::call_once(dlog_once_, [this] {
    auto table = std::make_shared<DlogTable>();
    table->p = to_u64(modulus_);
    const std::uint64_t q = to_u64(*q_);
    table->m = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(q)))) + 1;
    const std::uint64_t g = to_u64(gen_);
    std::uint64_t cur = 1;
    for (std::uint64_t j = 0; j < table->m; ++j) {
      table->baby.emplace(cur, j);
      cur = mulmod(cur, g, table->p);
    }
    mpz_class ginv;
    mpz_invert(ginv.get_mpz_t(), gen_.get_mpz_t(), modulus_.get_mpz_t());
    table->giant = to_u64(powm(ginv, table->m, modulus_));
    dlog_table_ = std::move(table);
  });

  const DlogTable& t = *dlog_table_;
  std::uint64_t gamma = to_u64(e.value_);
  for (std::uint64_t i = 0; i <= t.m; ++i) {
    if (auto it = t.baby.find(gamma); it != t.baby.end()) {
      mpz_class x = mpz_class(std::to_string(i)) * mpz_class(std::to_string(t.m)) +
                    mpz_class(std::to_string(it->second));
      return Scalar(q_, x);
    }
    gamma = mulmod(gamma, t.giant, t.p);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- Element

GroupTag Element::tag() const {
  if (!group_) throw AlgebraError("uninitialised element");
  return group_->tag();
}

void Element::check_same_group(const Element& o) const {
  if (!group_ || !o.group_) throw AlgebraError("uninitialised element");
  if (group_ != o.group_ && !group_->same_as(*o.group_)) {
    throw AlgebraError("cross-group operation: " + std::string(to_string(group_->tag())) + " with " +
                       std::string(to_string(o.group_->tag())));
  }
}

Element Element::operator*(const Element& o) const {
  check_same_group(o);
  mpz_class v;
  if (group_->kind() == Group::Kind::kResidue) {
    v = value_ * o.value_;
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), group_->modulus().get_mpz_t());
  } else {
    v = value_ + o.value_;
    if (v >= group_->order()) v -= group_->order();
  }
  return group_->make(std::move(v));
}

Element Element::pow(const Scalar& k) const {
  if (!group_) throw AlgebraError("uninitialised element");
  if (k.modulus() != group_->order()) throw AlgebraError("exponent modulus does not match group order");
  ++t_counts.exponentiations;
  if (group_->kind() == Group::Kind::kResidue) {
    return group_->make(powm(value_, k.value(), group_->modulus()));
  }
  mpz_class v = value_ * k.value();
  mpz_mod(v.get_mpz_t(), v.get_mpz_t(), group_->order().get_mpz_t());
  return group_->make(std::move(v));
}

Element Element::inverse() const {
  if (!group_) throw AlgebraError("uninitialised element");
  if (group_->kind() == Group::Kind::kResidue) {
    mpz_class v;
    mpz_invert(v.get_mpz_t(), value_.get_mpz_t(), group_->modulus().get_mpz_t());
    return group_->make(std::move(v));
  }
  return group_->make(value_ == 0 ? mpz_class(0) : group_->order() - value_);
}

bool Element::is_identity() const {
  if (!group_) throw AlgebraError("uninitialised element");
  return group_->kind() == Group::Kind::kResidue ? value_ == 1 : value_ == 0;
}

bool Element::operator==(const Element& o) const {
  if (!group_ || !o.group_) return !group_ && !o.group_;
  return value_ == o.value_ && (group_ == o.group_ || group_->same_as(*o.group_));
}

Bytes Element::encode() const {
  if (!group_) throw AlgebraError("uninitialised element");
  Bytes out;
  out.reserve(1 + group_->width());
  out.push_back(static_cast<std::uint8_t>(group_->tag()));
  Bytes v = encode_fixed(value_, group_->width());
  out.insert(out.end(), v.begin(), v.end());
  return out;
}

// ---------------------------------------------------------------- counters

OpCounts op_counts() { return t_counts; }

OpCounts CountScope::delta() const {
  OpCounts now = op_counts();
  return {now.exponentiations - start_.exponentiations, now.pairings - start_.pairings};
}

// ---------------------------------------------------------------- pairing

PairingBackend PairingBackend::transparent(const mpz_class& q) {
  PairingBackend b;
  b.kind_ = Kind::kTransparent;
  b.g1_ = Group::exponent(GroupTag::kG1, q);
  b.g2_ = Group::exponent(GroupTag::kG2, q);
  b.gt_ = Group::exponent(GroupTag::kGT, q);
  return b;
}

PairingBackend PairingBackend::schnorr(const SchnorrGroupParams& params) {
  if (mpz_sizeinbase(params.q.get_mpz_t(), 2) > kMaxDlogBits) {
    throw AlgebraError("schnorr pairing backend needs |q| <= 40 bits");
  }
  PairingBackend b;
  b.kind_ = Kind::kSchnorr;
  b.g1_ = Group::residue(GroupTag::kG1, params);
  b.g2_ = Group::residue(GroupTag::kG2, params);
  b.gt_ = Group::residue(GroupTag::kGT, params);
  return b;
}

std::string PairingBackend::name() const { return kind_ == Kind::kTransparent ? "transparent" : "schnorr"; }

Element PairingBackend::pair(const Element& a, const Element& b) const {
  if (!a.valid() || !b.valid()) throw AlgebraError("pair: uninitialised operand");
  if (!a.group()->same_as(*g1_)) throw AlgebraError("pair: first operand must lie in G1");
  if (!b.group()->same_as(*g2_)) throw AlgebraError("pair: second operand must lie in G2");
  ++t_counts.pairings;
  if (kind_ == Kind::kTransparent) {
    mpz_class v = a.value() * b.value();
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), order().get_mpz_t());
    return gt_->make(std::move(v));
  }
  auto da = g1_->dlog(a);
  auto db = g2_->dlog(b);
  if (!da || !db) throw AlgebraError("pair: discrete log unavailable");
  const Scalar k = *da * *db;
  return gt_->make(powm(gt_->gen_, k.value(), gt_->modulus()));
}

Element PairingBackend::psi(const Element& b) const {
  if (!b.valid() || !b.group()->same_as(*g2_)) throw AlgebraError("psi: operand must lie in G2");
  return g1_->make(b.value());
}

// ---------------------------------------------------------------- suite

Suite Suite::make(const SchnorrGroupParams& params, PairingBackend::Kind kind) {
  Suite s;
  s.group = Group::residue(GroupTag::kG, params);
  s.pairing = kind == PairingBackend::Kind::kTransparent ? PairingBackend::transparent(params.q)
                                                         : PairingBackend::schnorr(params);
  return s;
}

unsigned Suite::challenge_bits() const {
  const std::size_t bits = mpz_sizeinbase(order().get_mpz_t(), 2);
  return static_cast<unsigned>(bits > 1 ? bits - 1 : 1);
}

GroupPtr Suite::by_tag(GroupTag tag) const {
  switch (tag) {
    case GroupTag::kG: return group;
    case GroupTag::kG1: return pairing.g1();
    case GroupTag::kG2: return pairing.g2();
    case GroupTag::kGT: return pairing.gt();
  }
  throw DecodeError("unknown group tag");
}

SchnorrGroupParams Suite::params() const {
  return {group->modulus(), group->order(), group->generator().value()};
}

}  // namespace cnmzk::algebra
