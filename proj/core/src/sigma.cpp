#include "cnmzk/sigma.hpp"

#include <cmath>
#include <functional>

namespace cnmzk::sigma {

// ---------------------------------------------------------------- Challenge

Challenge::Challenge(unsigned bits, const mpz_class& value) : bits_(bits), value_(value) {
  if (bits == 0) throw Error("challenge length must be positive");
  if (value < 0 || (value != 0 && mpz_sizeinbase(value.get_mpz_t(), 2) > bits)) {
    throw Error("challenge value exceeds its bit length");
  }
}

Challenge Challenge::random(unsigned bits, Rng& rng) {
  mpz_class bound = 1;
  bound <<= bits;
  return Challenge(bits, rng.below(bound));
}

Scalar Challenge::to_scalar(const Modulus& q) const {
  if (value_ >= *q) throw AlgebraError("challenge does not embed in Zq");
  return Scalar(q, value_);
}

Challenge Challenge::operator^(const Challenge& o) const {
  if (bits_ != o.bits_) throw Error("challenge length mismatch");
  mpz_class out;
  mpz_xor(out.get_mpz_t(), value_.get_mpz_t(), o.value_.get_mpz_t());
  return Challenge(bits_, out);
}

Bytes Challenge::encode() const { return encode_fixed(value_, width(bits_)); }

Challenge Challenge::decode(Reader& in, unsigned bits) {
  const mpz_class v = decode_fixed(in.raw(width(bits)));
  if (v != 0 && mpz_sizeinbase(v.get_mpz_t(), 2) > bits) throw DecodeError("challenge out of range");
  return Challenge(bits, v);
}

// ---------------------------------------------------------------- payloads

Bytes encode(const Payload& payload) {
  Writer w;
  for (const Field& f : payload) {
    std::visit([&](const auto& v) { w.raw(v.encode()); }, f);
  }
  return std::move(w).bytes();
}

bool operator==(const Field& a, const Field& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        return x == std::get<T>(b);
      },
      a);
}

const Element& element_at(const Payload& p, std::size_t i) { return std::get<Element>(p.at(i)); }
const Scalar& scalar_at(const Payload& p, std::size_t i) { return std::get<Scalar>(p.at(i)); }
const Challenge& challenge_at(const Payload& p, std::size_t i) { return std::get<Challenge>(p.at(i)); }

Bytes Transcript::encode() const {
  Writer w;
  w.raw(sigma::encode(a)).raw(e.encode()).raw(sigma::encode(z));
  return std::move(w).bytes();
}

Witness or_witness(std::size_t branch, Witness inner) {
  return OrWitness{branch, std::make_shared<const Witness>(std::move(inner))};
}

// ---------------------------------------------------------------- interface defaults

std::unique_ptr<ProverSession> SigmaProtocol::resume(const Transcript&, const Witness&) const {
  throw Error(name() + " cannot reopen a simulated transcript");
}

double SigmaProtocol::knowledge_error() const { return std::ldexp(1.0, -static_cast<int>(challenge_bits())); }

Witness extract_special_soundness(const SigmaProtocol& proto, const Transcript& t1, const Transcript& t2) {
  if (t1.a.size() != t2.a.size()) throw ExtractionError("transcripts do not share a first message");
  for (std::size_t i = 0; i < t1.a.size(); ++i) {
    if (!(t1.a[i] == t2.a[i])) throw ExtractionError("transcripts do not share a first message");
  }
  if (t1.e == t2.e) throw ExtractionError("challenges are equal");
  if (!proto.verify(t1) || !proto.verify(t2)) throw ExtractionError("transcript not accepting");
  Witness w = proto.extract(t1, t2);
  if (!proto.holds(w)) throw ExtractionMismatch(proto.name() + ": extracted witness fails the relation");
  return w;
}

namespace {

template <class Fn>
bool guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const Error&) {
    return false;
  } catch (const std::bad_variant_access&) {
    return false;
  } catch (const std::out_of_range&) {
    return false;
  }
}

bool shaped(const SigmaProtocol& p, const Transcript& t) {
  return t.a.size() == p.first_size() && t.z.size() == p.response_size() && t.e.bits() == p.challenge_bits();
}

Scalar challenge_gap(const Transcript& t1, const Transcript& t2, const Modulus& q) {
  return t1.e.to_scalar(q) - t2.e.to_scalar(q);
}

class FixedSession final : public ProverSession {
 public:
  using Responder = std::function<Payload(const Challenge&)>;
  FixedSession(Payload first, Responder responder) : first_(std::move(first)), responder_(std::move(responder)) {}
  const Payload& first() const override { return first_; }
  Payload respond(const Challenge& e) const override { return responder_(e); }
  std::unique_ptr<ProverSession> clone() const override { return std::make_unique<FixedSession>(*this); }

 private:
  Payload first_;
  Responder responder_;
};

}  // namespace

// ---------------------------------------------------------------- SchnorrDl

SchnorrDl::SchnorrDl(Element base, Element x, unsigned bits) : base_(std::move(base)), x_(std::move(x)), bits_(bits) {
  if (!x_.valid() || !x_.group()->same_as(*base_.group())) throw AlgebraError("schnorr_dl: statement group mismatch");
}

bool SchnorrDl::holds(const Witness& w) const {
  const auto* d = w.get<DlogWitness>();
  return d && guarded([&] { return base_.pow(d->w) == x_; });
}

std::unique_ptr<ProverSession> SchnorrDl::prove(const Witness& w, Rng& rng) const {
  const auto* d = w.get<DlogWitness>();
  if (!d || !holds(w)) throw Error("schnorr_dl: invalid witness");
  return prove_with(d->w, base_.group()->random_scalar(rng));
}

std::unique_ptr<ProverSession> SchnorrDl::prove_with(const Scalar& w, const Scalar& t) const {
  const Modulus q = base_.group()->order_ptr();
  return std::make_unique<FixedSession>(Payload{base_.pow(t)},
                                        [w, t, q](const Challenge& e) { return Payload{t + e.to_scalar(q) * w}; });
}

std::unique_ptr<ProverSession> SchnorrDl::resume(const Transcript& sim, const Witness& w) const {
  const auto* d = w.get<DlogWitness>();
  if (!d || !holds(w)) throw Error("schnorr_dl: invalid witness");
  const Modulus q = base_.group()->order_ptr();
  const Scalar t = scalar_at(sim.z, 0) - sim.e.to_scalar(q) * d->w;
  return std::make_unique<FixedSession>(sim.a, [w = d->w, t, q](const Challenge& e) {
    return Payload{t + e.to_scalar(q) * w};
  });
}

Transcript SchnorrDl::simulate(const Challenge& e, Rng& rng) const {
  const Scalar z = base_.group()->random_scalar(rng);
  const Scalar es = e.to_scalar(base_.group()->order_ptr());
  return {{base_.pow(z) * x_.pow(-es)}, e, {z}};
}

bool SchnorrDl::verify(const Transcript& t) const {
  return guarded([&] {
    if (!shaped(*this, t)) return false;
    const Scalar es = t.e.to_scalar(base_.group()->order_ptr());
    return base_.pow(scalar_at(t.z, 0)) == element_at(t.a, 0) * x_.pow(es);
  });
}

Witness SchnorrDl::extract(const Transcript& t1, const Transcript& t2) const {
  const Scalar de = challenge_gap(t1, t2, base_.group()->order_ptr());
  return DlogWitness{(scalar_at(t1.z, 0) - scalar_at(t2.z, 0)) / de};
}

Payload SchnorrDl::read_first(Reader& in) const { return {in.element(*base_.group())}; }
Payload SchnorrDl::read_response(Reader& in) const { return {in.scalar(base_.group()->order_ptr())}; }

// ---------------------------------------------------------------- DlPair

DlPair::DlPair(Element base, Element u, Element v, unsigned bits)
    : base_(std::move(base)), u_(std::move(u)), v_(std::move(v)), bits_(bits) {
  if (!u_.valid() || !v_.valid() || !u_.group()->same_as(*base_.group()) || !v_.group()->same_as(*base_.group())) {
    throw AlgebraError("dl_pair: statement group mismatch");
  }
}

bool DlPair::holds(const Witness& w) const {
  const auto* d = w.get<DlPairWitness>();
  return d && guarded([&] { return base_.pow(d->x) == u_ && base_.pow(d->y) == v_; });
}

std::unique_ptr<ProverSession> DlPair::prove(const Witness& w, Rng& rng) const {
  const auto* d = w.get<DlPairWitness>();
  if (!d || !holds(w)) throw Error("dl_pair: invalid witness");
  const Scalar t1 = base_.group()->random_scalar(rng);
  const Scalar t2 = base_.group()->random_scalar(rng);
  const Modulus q = base_.group()->order_ptr();
  return std::make_unique<FixedSession>(Payload{base_.pow(t1), base_.pow(t2)},
                                        [d = *d, t1, t2, q](const Challenge& e) {
                                          const Scalar es = e.to_scalar(q);
                                          return Payload{t1 + es * d.x, t2 + es * d.y};
                                        });
}

std::unique_ptr<ProverSession> DlPair::resume(const Transcript& sim, const Witness& w) const {
  const auto* d = w.get<DlPairWitness>();
  if (!d || !holds(w)) throw Error("dl_pair: invalid witness");
  const Modulus q = base_.group()->order_ptr();
  const Scalar es = sim.e.to_scalar(q);
  const Scalar t1 = scalar_at(sim.z, 0) - es * d->x;
  const Scalar t2 = scalar_at(sim.z, 1) - es * d->y;
  return std::make_unique<FixedSession>(sim.a, [d = *d, t1, t2, q](const Challenge& e) {
    const Scalar ec = e.to_scalar(q);
    return Payload{t1 + ec * d.x, t2 + ec * d.y};
  });
}

Transcript DlPair::simulate(const Challenge& e, Rng& rng) const {
  const Scalar z1 = base_.group()->random_scalar(rng);
  const Scalar z2 = base_.group()->random_scalar(rng);
  const Scalar es = e.to_scalar(base_.group()->order_ptr());
  return {{base_.pow(z1) * u_.pow(-es), base_.pow(z2) * v_.pow(-es)}, e, {z1, z2}};
}

bool DlPair::verify(const Transcript& t) const {
  return guarded([&] {
    if (!shaped(*this, t)) return false;
    const Scalar es = t.e.to_scalar(base_.group()->order_ptr());
    return base_.pow(scalar_at(t.z, 0)) == element_at(t.a, 0) * u_.pow(es) &&
           base_.pow(scalar_at(t.z, 1)) == element_at(t.a, 1) * v_.pow(es);
  });
}

Witness DlPair::extract(const Transcript& t1, const Transcript& t2) const {
  const Scalar de = challenge_gap(t1, t2, base_.group()->order_ptr());
  return DlPairWitness{(scalar_at(t1.z, 0) - scalar_at(t2.z, 0)) / de,
                       (scalar_at(t1.z, 1) - scalar_at(t2.z, 1)) / de};
}

Payload DlPair::read_first(Reader& in) const { return {in.element(*base_.group()), in.element(*base_.group())}; }

Payload DlPair::read_response(Reader& in) const {
  return {in.scalar(base_.group()->order_ptr()), in.scalar(base_.group()->order_ptr())};
}

// ---------------------------------------------------------------- PedersenOpenPok

PedersenOpenPok::PedersenOpenPok(commit::PedersenParams params, Element c, unsigned bits)
    : params_(std::move(params)), c_(std::move(c)), bits_(bits) {
  if (!c_.valid() || !c_.group()->same_as(*params_.group)) throw AlgebraError("pedersen_open_pok: C not in G");
}

bool PedersenOpenPok::holds(const Witness& w) const {
  const auto* o = w.get<commit::Opening>();
  return o && commit::pedersen_verify_open(params_, {c_}, *o);
}

std::unique_ptr<ProverSession> PedersenOpenPok::prove(const Witness& w, Rng& rng) const {
  const auto* o = w.get<commit::Opening>();
  if (!o || !holds(w)) throw Error("pedersen_open_pok: invalid witness");
  const Scalar w1 = params_.group->random_scalar(rng);
  const Scalar w2 = params_.group->random_scalar(rng);
  return prove_with(*o, w1, w2);
}

std::unique_ptr<ProverSession> PedersenOpenPok::prove_with(const commit::Opening& open, const Scalar& w1,
                                                           const Scalar& w2) const {
  const Modulus q = params_.group->order_ptr();
  const Element a = params_.group->generator().pow(w1) * params_.h.pow(w2);
  return std::make_unique<FixedSession>(Payload{a}, [open, w1, w2, q](const Challenge& e) {
    const Scalar es = e.to_scalar(q);
    return Payload{w1 + es * open.value, w2 + es * open.randomness};
  });
}

std::unique_ptr<ProverSession> PedersenOpenPok::resume(const Transcript& sim, const Witness& w) const {
  const auto* o = w.get<commit::Opening>();
  if (!o || !holds(w)) throw Error("pedersen_open_pok: invalid witness");
  const Modulus q = params_.group->order_ptr();
  const Scalar es = sim.e.to_scalar(q);
  const Scalar w1 = scalar_at(sim.z, 0) - es * o->value;
  const Scalar w2 = scalar_at(sim.z, 1) - es * o->randomness;
  return std::make_unique<FixedSession>(sim.a, [open = *o, w1, w2, q](const Challenge& e) {
    const Scalar ec = e.to_scalar(q);
    return Payload{w1 + ec * open.value, w2 + ec * open.randomness};
  });
}

Transcript PedersenOpenPok::simulate(const Challenge& e, Rng& rng) const {
  const Scalar y = params_.group->random_scalar(rng);
  const Scalar z = params_.group->random_scalar(rng);
  const Scalar es = e.to_scalar(params_.group->order_ptr());
  return {{params_.group->generator().pow(y) * params_.h.pow(z) * c_.pow(-es)}, e, {y, z}};
}

bool PedersenOpenPok::verify(const Transcript& t) const {
  return guarded([&] {
    if (!shaped(*this, t)) return false;
    const Scalar es = t.e.to_scalar(params_.group->order_ptr());
    return params_.group->generator().pow(scalar_at(t.z, 0)) * params_.h.pow(scalar_at(t.z, 1)) ==
           element_at(t.a, 0) * c_.pow(es);
  });
}

Witness PedersenOpenPok::extract(const Transcript& t1, const Transcript& t2) const {
  const Scalar de = challenge_gap(t1, t2, params_.group->order_ptr());
  return commit::Opening{(scalar_at(t1.z, 0) - scalar_at(t2.z, 0)) / de,
                         (scalar_at(t1.z, 1) - scalar_at(t2.z, 1)) / de};
}

Payload PedersenOpenPok::read_first(Reader& in) const { return {in.element(*params_.group)}; }

Payload PedersenOpenPok::read_response(Reader& in) const {
  return {in.scalar(params_.group->order_ptr()), in.scalar(params_.group->order_ptr())};
}

// ---------------------------------------------------------------- OR

namespace {

Payload flatten_first(const std::vector<Payload>& parts) {
  Payload out;
  for (const Payload& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

Payload assemble_response(const std::vector<Challenge>& es, const std::vector<Payload>& zs) {
  Payload out;
  for (std::size_t i = 0; i < es.size(); ++i) {
    out.emplace_back(es[i]);
    out.insert(out.end(), zs[i].begin(), zs[i].end());
  }
  return out;
}

class ClassicOrSession final : public ProverSession {
 public:
  ClassicOrSession(std::size_t known, std::unique_ptr<ProverSession> real, std::vector<Transcript> sims,
                   Payload first)
      : known_(known), real_(std::move(real)), sims_(std::move(sims)), first_(std::move(first)) {}

  ClassicOrSession(const ClassicOrSession& o)
      : known_(o.known_), real_(o.real_->clone()), sims_(o.sims_), first_(o.first_) {}

  const Payload& first() const override { return first_; }

  Payload respond(const Challenge& e) const override {
    Challenge ek = e;
    for (std::size_t i = 0; i < sims_.size(); ++i) {
      if (i != known_) ek = ek ^ sims_[i].e;
    }
    std::vector<Challenge> es(sims_.size());
    std::vector<Payload> zs(sims_.size());
    for (std::size_t i = 0; i < sims_.size(); ++i) {
      if (i == known_) {
        es[i] = ek;
        zs[i] = real_->respond(ek);
      } else {
        es[i] = sims_[i].e;
        zs[i] = sims_[i].z;
      }
    }
    return assemble_response(es, zs);
  }

  std::unique_ptr<ProverSession> clone() const override { return std::make_unique<ClassicOrSession>(*this); }

 private:
  std::size_t known_;
  std::unique_ptr<ProverSession> real_;
  std::vector<Transcript> sims_;  // entry at known_ unused
  Payload first_;
};

class ReopenOrSession final : public ProverSession {
 public:
  ReopenOrSession(std::vector<ProtocolPtr> branches, std::vector<Transcript> sims, std::size_t known,
                  std::shared_ptr<const Witness> witness, Payload first)
      : branches_(std::move(branches)),
        sims_(std::move(sims)),
        known_(known),
        witness_(std::move(witness)),
        first_(std::move(first)) {}

  const Payload& first() const override { return first_; }

  Payload respond(const Challenge& e) const override {
    if (!witness_) throw ProtocolError("OR prover holds no witness");
    Challenge ek = e;
    for (std::size_t i = 0; i < sims_.size(); ++i) {
      if (i != known_) ek = ek ^ sims_[i].e;
    }
    std::vector<Challenge> es(sims_.size());
    std::vector<Payload> zs(sims_.size());
    for (std::size_t i = 0; i < sims_.size(); ++i) {
      if (i == known_) {
        es[i] = ek;
        zs[i] = branches_[i]->resume(sims_[i], *witness_)->respond(ek);
      } else {
        es[i] = sims_[i].e;
        zs[i] = sims_[i].z;
      }
    }
    return assemble_response(es, zs);
  }

  std::unique_ptr<ProverSession> clone() const override { return std::make_unique<ReopenOrSession>(*this); }

 private:
  std::vector<ProtocolPtr> branches_;
  std::vector<Transcript> sims_;
  std::size_t known_;
  std::shared_ptr<const Witness> witness_;
  Payload first_;
};

}  // namespace

OrProtocol::OrProtocol(std::vector<ProtocolPtr> branches, Strategy strategy)
    : branches_(std::move(branches)), strategy_(strategy) {
  if (branches_.size() < 2) throw Error("OR needs at least two branches");
  bits_ = branches_.front()->challenge_bits();
  for (const auto& b : branches_) {
    if (b->challenge_bits() != bits_) throw Error("OR branches disagree on challenge length");
    if (strategy_ == Strategy::kWitnessIndependent && !b->partially_witness_independent()) {
      throw Error("OR branch " + b->name() + " is not partially witness independent");
    }
  }
}

std::string OrProtocol::name() const {
  std::string out = "or(";
  for (std::size_t i = 0; i < branches_.size(); ++i) out += (i ? "," : "") + branches_[i]->name();
  return out + ")";
}

std::size_t OrProtocol::first_size() const {
  std::size_t n = 0;
  for (const auto& b : branches_) n += b->first_size();
  return n;
}

std::size_t OrProtocol::response_size() const {
  std::size_t n = 0;
  for (const auto& b : branches_) n += 1 + b->response_size();
  return n;
}

bool OrProtocol::holds(const Witness& w) const {
  const auto* o = w.get<OrWitness>();
  return o && o->inner && o->branch < branches_.size() && branches_[o->branch]->holds(*o->inner);
}

std::unique_ptr<ProverSession> OrProtocol::prove(const Witness& w, Rng& rng) const {
  const auto* o = w.get<OrWitness>();
  if (!o || !o->inner || o->branch >= branches_.size()) throw Error(name() + ": witness must name a branch");
  if (!branches_[o->branch]->holds(*o->inner)) throw Error(name() + ": invalid witness for the named branch");

  std::vector<Payload> parts(branches_.size());
  std::vector<Transcript> sims(branches_.size());
  if (strategy_ == Strategy::kWitnessIndependent) {
    for (std::size_t i = 0; i < branches_.size(); ++i) {
      sims[i] = branches_[i]->simulate(Challenge::random(bits_, rng), rng);
      parts[i] = sims[i].a;
    }
    return std::make_unique<ReopenOrSession>(branches_, std::move(sims), o->branch, o->inner, flatten_first(parts));
  }

  std::unique_ptr<ProverSession> real;
  for (std::size_t i = 0; i < branches_.size(); ++i) {
    if (i == o->branch) {
      real = branches_[i]->prove(*o->inner, rng);
      parts[i] = real->first();
    } else {
      sims[i] = branches_[i]->simulate(Challenge::random(bits_, rng), rng);
      parts[i] = sims[i].a;
    }
  }
  return std::make_unique<ClassicOrSession>(o->branch, std::move(real), std::move(sims), flatten_first(parts));
}

std::unique_ptr<ProverSession> OrProtocol::commit_blind(Rng& rng) const {
  std::vector<Payload> parts(branches_.size());
  std::vector<Transcript> sims(branches_.size());
  for (std::size_t i = 0; i < branches_.size(); ++i) {
    sims[i] = branches_[i]->simulate(Challenge::random(bits_, rng), rng);
    parts[i] = sims[i].a;
  }
  return std::make_unique<ReopenOrSession>(branches_, std::move(sims), 0, nullptr, flatten_first(parts));
}

Transcript OrProtocol::simulate(const Challenge& e, Rng& rng) const {
  std::vector<Payload> parts(branches_.size());
  std::vector<Challenge> es(branches_.size());
  std::vector<Payload> zs(branches_.size());
  Challenge rest = e;
  for (std::size_t i = 0; i < branches_.size(); ++i) {
    es[i] = i + 1 < branches_.size() ? Challenge::random(bits_, rng) : rest;
    rest = i + 1 < branches_.size() ? rest ^ es[i] : rest;
    Transcript t = branches_[i]->simulate(es[i], rng);
    parts[i] = std::move(t.a);
    zs[i] = std::move(t.z);
  }
  return {flatten_first(parts), e, assemble_response(es, zs)};
}

std::vector<Transcript> OrProtocol::split(const Transcript& t) const {
  if (!shaped(*this, t)) throw DecodeError(name() + ": transcript shape mismatch");
  std::vector<Transcript> out(branches_.size());
  std::size_t ai = 0, zi = 0;
  for (std::size_t i = 0; i < branches_.size(); ++i) {
    const std::size_t na = branches_[i]->first_size();
    const std::size_t nz = branches_[i]->response_size();
    out[i].a.assign(t.a.begin() + static_cast<std::ptrdiff_t>(ai), t.a.begin() + static_cast<std::ptrdiff_t>(ai + na));
    out[i].e = challenge_at(t.z, zi);
    out[i].z.assign(t.z.begin() + static_cast<std::ptrdiff_t>(zi + 1),
                    t.z.begin() + static_cast<std::ptrdiff_t>(zi + 1 + nz));
    ai += na;
    zi += 1 + nz;
  }
  return out;
}

bool OrProtocol::verify(const Transcript& t) const {
  return guarded([&] {
    const std::vector<Transcript> parts = split(t);
    Challenge acc = Challenge::zero(bits_);
    for (const Transcript& p : parts) acc = acc ^ p.e;
    if (acc != t.e) return false;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (!branches_[i]->verify(parts[i])) return false;
    }
    return true;
  });
}

Witness OrProtocol::extract(const Transcript& t1, const Transcript& t2) const {
  const std::vector<Transcript> p1 = split(t1);
  const std::vector<Transcript> p2 = split(t2);
  for (std::size_t i = 0; i < branches_.size(); ++i) {
    if (p1[i].e != p2[i].e) return or_witness(i, branches_[i]->extract(p1[i], p2[i]));
  }
  throw ExtractionError(name() + ": no branch has distinct sub-challenges");
}

Payload OrProtocol::read_first(Reader& in) const {
  Payload out;
  for (const auto& b : branches_) {
    Payload p = b->read_first(in);
    out.insert(out.end(), p.begin(), p.end());
  }
  return out;
}

Payload OrProtocol::read_response(Reader& in) const {
  Payload out;
  for (const auto& b : branches_) {
    out.emplace_back(Challenge::decode(in, bits_));
    Payload p = b->read_response(in);
    out.insert(out.end(), p.begin(), p.end());
  }
  return out;
}

}  // namespace cnmzk::sigma
