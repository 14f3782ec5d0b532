#include "cnmzk/sigstmt.hpp"

namespace cnmzk::sigstmt {
namespace {

using commit::CommitMode;

const algebra::Modulus& qof(const Stmt2Instance& inst) { return inst.suite.order_ptr(); }

class Stmt2Session final : public sigma::ProverSession {
 public:
  explicit Stmt2Session(Stmt2ProverState state) : state_(std::move(state)), first_(state_.first.to_payload()) {}
  const sigma::Payload& first() const override { return first_; }
  sigma::Payload respond(const Challenge& e) const override { return stmt2_respond(state_, e).to_payload(); }
  std::unique_ptr<sigma::ProverSession> clone() const override { return std::make_unique<Stmt2Session>(*this); }

 private:
  Stmt2ProverState state_;
  sigma::Payload first_;
};

}  // namespace

sigma::Payload Stmt2FirstMsg::to_payload() const {
  sigma::Payload p{A, B, D, E, F, M1, M2, t};
  if (N1) p.emplace_back(*N1);
  if (N2) p.emplace_back(*N2);
  return p;
}

Stmt2FirstMsg Stmt2FirstMsg::from_payload(const sigma::Payload& p, CommitMode mode) {
  const std::size_t expected = mode == CommitMode::kPedersen ? 8 : 10;
  if (p.size() != expected) throw DecodeError("stmt2 first message has the wrong shape");
  Stmt2FirstMsg m;
  m.A = sigma::element_at(p, 0);
  m.B = sigma::element_at(p, 1);
  m.D = sigma::element_at(p, 2);
  m.E = sigma::element_at(p, 3);
  m.F = sigma::element_at(p, 4);
  m.M1 = sigma::element_at(p, 5);
  m.M2 = sigma::element_at(p, 6);
  m.t = sigma::scalar_at(p, 7);
  if (mode == CommitMode::kElGamal) {
    m.N1 = sigma::element_at(p, 8);
    m.N2 = sigma::element_at(p, 9);
  }
  return m;
}

Stmt2Response Stmt2Response::from_payload(const sigma::Payload& p) {
  if (p.size() != 4) throw DecodeError("stmt2 response has the wrong shape");
  return {sigma::scalar_at(p, 0), sigma::scalar_at(p, 1), sigma::scalar_at(p, 2), sigma::scalar_at(p, 3)};
}

bool stmt2_holds(const Stmt2Instance& inst, const Stmt2Witness& wit) {
  try {
    if (!wit.sig.sigma.valid() || !wit.sig.sigma.group()->same_as(*inst.suite.pairing.g1())) return false;
    const Scalar s1 = sig::ceil_repr(wit.sig.sigma, qof(inst));
    if (!inst.com.opens_to({s1, wit.r1}, {wit.sig.r, wit.r2})) return false;
    return sig::bb_verify(inst.suite.pairing, inst.vk, inst.m, wit.sig);
  } catch (const Error&) {
    return false;
  }
}

std::pair<Stmt2FirstMsg, Stmt2ProverState> stmt2_prove_first(const Stmt2Instance& inst, const Stmt2Witness& wit,
                                                             Rng& rng) {
  const algebra::Modulus& q = qof(inst);
  const Scalar w1 = Scalar::random(q, rng);
  const Scalar w2 = Scalar::random(q, rng);
  const Scalar w3 = Scalar::random(q, rng);
  const Scalar w4 = Scalar::random(q, rng);
  const Scalar t = Scalar::random_nonzero(q, rng);
  return stmt2_prove_first_with(inst, wit, w1, w2, w3, w4, t);
}

std::pair<Stmt2FirstMsg, Stmt2ProverState> stmt2_prove_first_with(const Stmt2Instance& inst,
                                                                  const Stmt2Witness& wit, const Scalar& w1,
                                                                  const Scalar& w2, const Scalar& w3,
                                                                  const Scalar& w4, const Scalar& t) {
  if (t.is_zero()) throw Error("stmt2: t must be nonzero");
  const Element g = inst.suite.group->generator();
  const Element& h = inst.com.h;
  Stmt2ProverState st{wit, sig::ceil_repr(wit.sig.sigma, qof(inst)), w1, w2, w3, w4, t, {}};
  Stmt2FirstMsg& f = st.first;
  f.M1 = g.pow(w1) * h.pow(w2);
  f.M2 = g.pow(w3) * h.pow(w4);
  f.F = wit.sig.sigma.pow(t);
  f.D = f.F.pow(st.s1);
  f.E = f.F.pow(-w1);
  f.A = inst.vk.v.pow(wit.sig.r);
  f.B = inst.vk.v.pow(w3);
  f.t = t;
  if (inst.com.mode == CommitMode::kElGamal) {
    f.N1 = g.pow(w2);
    f.N2 = g.pow(w4);
  }
  return {f, std::move(st)};
}

Stmt2Response stmt2_respond(const Stmt2ProverState& st, const Challenge& e) {
  const Scalar es = e.to_scalar(st.w1.modulus_ptr());
  return {st.w1 + es * st.s1, st.w3 + es * st.wit.sig.r, st.w2 + es * st.wit.r1, st.w4 + es * st.wit.r2};
}

bool stmt2_verify(const Stmt2Instance& inst, const Stmt2FirstMsg& f, const Challenge& e, const Stmt2Response& r) {
  try {
    if (f.t.is_zero()) return false;
    const bool elgamal = inst.com.mode == CommitMode::kElGamal;
    if (elgamal != (f.N1.has_value() && f.N2.has_value())) return false;
    const Scalar es = e.to_scalar(qof(inst));
    const Element g = inst.suite.group->generator();
    const Element& h = inst.com.h;
    // (i), (ii): inverse of M1 = g^y1 h^z1 C1^-e and M2 = g^y2 h^z2 C2^-e.
    if (g.pow(r.y1) * h.pow(r.z1) != f.M1 * inst.com.c1.pow(es)) return false;
    if (g.pow(r.y2) * h.pow(r.z2) != f.M2 * inst.com.c2.pow(es)) return false;
    if (elgamal) {
      if (g.pow(r.z1) != *f.N1 * inst.com.c1_rand->pow(es)) return false;
      if (g.pow(r.z2) != *f.N2 * inst.com.c2_rand->pow(es)) return false;
    }
    // (iii): inverse of B = v^y2 A^-e.
    if (inst.vk.v.pow(r.y2) != f.B * f.A.pow(es)) return false;
    // (iv): inverse of E = D^e F^-y1.
    if (f.F.pow(r.y1) * f.E != f.D.pow(es)) return false;
    // (v): inverse of A = u^-1 g2^-m g2^(1/s) with F = g1^(s t).
    const Element base = inst.vk.u * inst.vk.g2.pow(inst.m) * f.A;
    return inst.suite.pairing.pair(f.F, base) == inst.vk.z.pow(f.t);
  } catch (const Error&) {
    return false;
  }
}

std::pair<Stmt2FirstMsg, Stmt2Response> stmt2_simulate(const Stmt2Instance& inst, const Challenge& e, Rng& rng) {
  const algebra::Modulus& q = qof(inst);
  const Scalar s = Scalar::random_nonzero(q, rng);
  const Scalar t = Scalar::random_nonzero(q, rng);
  Stmt2Response r;
  r.y1 = Scalar::random(q, rng);
  r.y2 = Scalar::random(q, rng);
  r.z1 = Scalar::random(q, rng);
  r.z2 = Scalar::random(q, rng);

  const Scalar es = e.to_scalar(q);
  const Element g = inst.suite.group->generator();
  const Element& h = inst.com.h;
  const Element sigma = inst.vk.g1.pow(s);
  Stmt2FirstMsg f;
  f.M1 = g.pow(r.y1) * h.pow(r.z1) * inst.com.c1.pow(-es);
  f.M2 = g.pow(r.y2) * h.pow(r.z2) * inst.com.c2.pow(-es);
  if (inst.com.mode == CommitMode::kElGamal) {
    f.N1 = g.pow(r.z1) * inst.com.c1_rand->pow(-es);
    f.N2 = g.pow(r.z2) * inst.com.c2_rand->pow(-es);
  }
  f.F = sigma.pow(t);
  f.D = sigma.pow(t * sig::ceil_repr(sigma, q));
  f.E = f.D.pow(es) * f.F.pow(-r.y1);
  f.A = inst.vk.u.inverse() * inst.vk.g2.pow(s.inverse() - inst.m);
  f.B = inst.vk.v.pow(r.y2) * f.A.pow(-es);
  f.t = t;
  return {f, r};
}

Stmt2Witness stmt2_extract(const Stmt2Instance& inst, const Stmt2FirstMsg& f, const Challenge& e1,
                           const Stmt2Response& r1, const Challenge& e2, const Stmt2Response& r2) {
  if (e1 == e2) throw ExtractionError("stmt2: challenges are equal");
  if (!stmt2_verify(inst, f, e1, r1) || !stmt2_verify(inst, f, e2, r2)) {
    throw ExtractionError("stmt2: transcript not accepting");
  }
  const algebra::Modulus& q = qof(inst);
  const Scalar de = e1.to_scalar(q) - e2.to_scalar(q);
  const Scalar s1 = (r1.y1 - r2.y1) / de;
  Stmt2Witness w;
  w.r1 = (r1.z1 - r2.z1) / de;
  w.sig.r = (r1.y2 - r2.y2) / de;
  w.r2 = (r1.z2 - r2.z2) / de;
  w.sig.sigma = f.F.pow(f.t.inverse());
  if (sig::ceil_repr(w.sig.sigma, q) != s1) {
    throw ExtractionMismatch("stmt2: committed value differs from the extracted signature");
  }
  if (!stmt2_holds(inst, w)) throw ExtractionMismatch("stmt2: extracted witness fails the relation");
  return w;
}

// ---------------------------------------------------------------- protocol object

Stmt2Protocol::Stmt2Protocol(Stmt2Instance inst) : inst_(std::move(inst)) {}

std::string Stmt2Protocol::name() const { return std::string("stmt2_") + std::string(to_string(inst_.com.mode)); }

std::size_t Stmt2Protocol::first_size() const { return inst_.com.mode == CommitMode::kPedersen ? 8 : 10; }

bool Stmt2Protocol::holds(const sigma::Witness& w) const {
  const auto* s = w.get<Stmt2Witness>();
  return s && stmt2_holds(inst_, *s);
}

std::unique_ptr<sigma::ProverSession> Stmt2Protocol::prove(const sigma::Witness& w, Rng& rng) const {
  const auto* s = w.get<Stmt2Witness>();
  if (!s || !stmt2_holds(inst_, *s)) throw Error(name() + ": invalid witness");
  return std::make_unique<Stmt2Session>(stmt2_prove_first(inst_, *s, rng).second);
}

sigma::Transcript Stmt2Protocol::simulate(const Challenge& e, Rng& rng) const {
  auto [f, r] = stmt2_simulate(inst_, e, rng);
  return {f.to_payload(), e, r.to_payload()};
}

bool Stmt2Protocol::verify(const sigma::Transcript& t) const {
  try {
    if (t.e.bits() != challenge_bits()) return false;
    return stmt2_verify(inst_, Stmt2FirstMsg::from_payload(t.a, inst_.com.mode), t.e,
                        Stmt2Response::from_payload(t.z));
  } catch (const Error&) {
    return false;
  } catch (const std::bad_variant_access&) {
    return false;
  } catch (const std::out_of_range&) {
    return false;
  }
}

sigma::Witness Stmt2Protocol::extract(const sigma::Transcript& t1, const sigma::Transcript& t2) const {
  const Stmt2FirstMsg f = Stmt2FirstMsg::from_payload(t1.a, inst_.com.mode);
  return stmt2_extract(inst_, f, t1.e, Stmt2Response::from_payload(t1.z), t2.e, Stmt2Response::from_payload(t2.z));
}

sigma::Payload Stmt2Protocol::read_first(Reader& in) const {
  const auto& g1 = *inst_.suite.pairing.g1();
  const auto& g2 = *inst_.suite.pairing.g2();
  const auto& g = *inst_.suite.group;
  sigma::Payload p{in.element(g2), in.element(g2), in.element(g1), in.element(g1),
                   in.element(g1), in.element(g),  in.element(g)};
  p.emplace_back(in.scalar(qof(inst_)));
  if (inst_.com.mode == CommitMode::kElGamal) {
    p.emplace_back(in.element(g));
    p.emplace_back(in.element(g));
  }
  return p;
}

sigma::Payload Stmt2Protocol::read_response(Reader& in) const {
  const auto& q = qof(inst_);
  return {in.scalar(q), in.scalar(q), in.scalar(q), in.scalar(q)};
}

std::shared_ptr<const sigma::OrProtocol> stmt1_or(const algebra::Suite& suite, const sig::BBVerKey& vk0,
                                                  const sig::BBVerKey& vk1, const commit::PairCommitment& com,
                                                  const Scalar& m) {
  std::vector<sigma::ProtocolPtr> branches{std::make_shared<Stmt2Protocol>(Stmt2Instance{suite, com, vk0, m}),
                                           std::make_shared<Stmt2Protocol>(Stmt2Instance{suite, com, vk1, m})};
  return std::make_shared<sigma::OrProtocol>(std::move(branches));
}

}  // namespace cnmzk::sigstmt
