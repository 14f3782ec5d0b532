#include "cnmzk/extractor.hpp"

#include <cmath>
#include <map>

#include "world.hpp"

namespace cnmzk::harness {

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::kEvent1: return "event1";
    case Outcome::kEvent2: return "event2";
    default: return "failure";
  }
}

RhoResult predicate_rho(const protocol::Config& cfg, const protocol::KeyRecord& key, const Element& x,
                        const commit::PairCommitment& com, const algebra::Scalar& m, const sigma::Transcript& t1,
                        const sigma::Transcript& t2) {
  RhoResult out;
  const auto pi_p = protocol::make_pi_p(cfg, key, x, com, m);
  try {
    const sigma::Witness w = sigma::extract_special_soundness(*pi_p, t1, t2);
    const auto* ow = w.get<sigma::OrWitness>();
    out.branch = ow->branch;
    if (const auto* d = ow->inner->get<sigma::DlogWitness>()) {
      if (cfg.suite.group->generator().pow(d->w) != x) throw ExtractionMismatch("extracted exponent misses x");
      out.outcome = Outcome::kEvent1;
      out.witness = d->w;
    } else if (const auto* s = ow->inner->get<sigma::SignatureWitness>()) {
      const int bit = static_cast<int>(ow->branch) - 1;
      const commit::Opening o1{sig::ceil_repr(s->sig.sigma, cfg.suite.order_ptr()), s->r1};
      const commit::Opening o2{s->sig.r, s->r2};
      if (!sig::bb_verify(cfg.suite.pairing, key.vk(bit), m, s->sig) || !com.opens_to(o1, o2)) {
        throw ExtractionMismatch("extracted signature does not open the commitment");
      }
      out.outcome = Outcome::kEvent2;
      out.opening = *s;
    } else {
      throw ExtractionMismatch("unexpected witness shape");
    }
  } catch (const Error& e) {
    out.outcome = Outcome::kFailure;
    out.failure = e.what();
  }
  return out;
}

namespace {

using detail::Director;
using detail::World;

Bytes key_id(const protocol::KeyRecord& k) {
  Bytes b = k.vk0.encode();
  const Bytes c = k.vk1.encode();
  b.insert(b.end(), c.begin(), c.end());
  return b;
}

sigma::Challenge other_challenge(const sigma::Challenge& e, Rng& rng) {
  for (;;) {
    sigma::Challenge c = sigma::Challenge::random(e.bits(), rng);
    if (c != e) return c;
  }
}

struct KnownKey {
  int bit = 0;
  sig::BBSigKey sk;
  std::optional<sig::BBSigKey> other;
};

class ExtractorDirector final : public Director {
 public:
  ExtractorDirector(const ExtractorConfig& cfg, RngHandle rng) : cfg_(cfg), rng_(std::move(rng)) {}

  void learn_honest(const World& w) {
    for (const auto& [index, keys] : w.honest_keys) {
      known_[key_id(w.file->at(index))] = {0, keys.sk0, keys.sk1};
    }
  }

  void run(World& w) {
    while (w.running() && !failed_) {
      if (++result_.stats.steps > cfg_.step_budget) {
        fail("step budget exhausted");
        break;
      }
      detail::step(w, *this);
    }
  }

  // ------------------------------------------------------------ left side

  Event start_left(World& w, std::size_t pos) override {
    detail::LeftSession& s = w.left[pos];
    s.prover.emplace(w.cfg, s.key, w.setup.left_statements[s.statement], protocol::NoWitness{}, w.child_rng());
    return detail::emit_left(w, pos, s.prover->start());
  }

  Event deliver_left(World& w, std::size_t pos, const Frame& f) override {
    detail::LeftSession& s = w.left[pos];
    if (f.type == wire::MsgType::kVStep1 && s.prover->phase() == protocol::Prover::Phase::kAwaitV1) {
      return answer_vstep1(w, pos, f, !lookahead_);
    }
    if (f.type == wire::MsgType::kVStep2 && s.placeholder && s.prover->phase() == protocol::Prover::Phase::kAwaitV2) {
      if (lookahead_) {
        if (goal_left_ && *goal_left_ == pos) {
          goal_frame_ = f;
          w.ended = true;
        }
        return detail::emit_left(w, pos, std::nullopt);
      }
      return resolve_placeholder(w, pos, f);
    }
    if (s.placeholder) return detail::emit_left(w, pos, std::nullopt);
    return detail::emit_left(w, pos, s.prover->on_message(f));
  }

  // ------------------------------------------------------------ right side

  void open_right(World& w, std::size_t pos) override {
    detail::RightSession& s = w.right[pos];
    s.verifier.emplace(w.cfg, w.file, w.honest_keys.at(s.key_index).honest(s.key_index), w.child_rng());
  }

  Event deliver_right(World& w, std::size_t pos, const Frame& f) override {
    detail::RightSession& s = w.right[pos];
    const bool target = pos + 1 == cfg_.target;
    if (target && !lookahead_ && f.type == wire::MsgType::kPStep1) {
      s.snap = std::make_shared<const World>(w);
      s.snap_frame = f;
    }
    Event ev = detail::emit_right(w, pos, s.verifier->on_message(f));
    if (!target || f.type != wire::MsgType::kPStep2) return ev;
    if (lookahead_) {
      if (goal_right_) w.ended = true;
      return ev;
    }
    if (w.right[pos].accepted && !done_) extract_witness(w, pos);
    return ev;
  }

  ExtractionResult finish(World& w) {
    ExtractionResult r = std::move(result_);
    if (!done_ && !failed_) {
      r.outcome = Outcome::kFailure;
      r.failure = cfg_.target > w.right.size() ? "target session never opened" : "target session never accepted";
    }
    for (const auto& k : recovered_) r.recovered.push_back(k);
    r.view = detail::to_view(w);
    r.reset_discipline_ok = w.adv->seen() == w.delivered;
    const double attempts = static_cast<double>(attempts_);
    const double misses = static_cast<double>(attempts_ - hits_);
    r.knowledge_error = std::ldexp(1.0, -static_cast<int>(w.cfg.suite.challenge_bits())) +
                        (attempts > 0 ? misses / attempts : 0.0);
    return r;
  }

 private:
  Event answer_vstep1(World& w, std::size_t pos, const Frame& f, bool snapshot) {
    detail::LeftSession& s = w.left[pos];
    auto it = known_.find(key_id(s.key));
    if (it != known_.end()) {
      const KnownKey& k = it->second;
      const int j = k.other ? static_cast<int>(rng_->bit()) : k.bit;
      s.prover->set_witness_source(protocol::SigningKeyWitness{j == k.bit ? k.sk : *k.other, j});
      s.placeholder = false;
    } else {
      s.prover->set_witness_source(protocol::NoWitness{});
      s.placeholder = true;
      if (snapshot) {
        s.snap = std::make_shared<const World>(w);
        s.snap_frame = f;
      }
    }
    return detail::emit_left(w, pos, s.prover->on_message(f));
  }

  Event resolve_placeholder(World& w, std::size_t pos, const Frame& vstep2) {
    const protocol::KeyRecord key = w.left[pos].key;
    if (!known_.contains(key_id(key))) {
      const auto t1 = w.left[pos].prover->check_pi_v(vstep2);
      if (!t1) return detail::emit_left(w, pos, std::nullopt);
      if (!recover_key(w, pos, key, *t1)) return detail::emit_left(w, pos, std::nullopt);
    }
    const detail::Snapshot snap = w.left[pos].snap;
    const Frame vstep1 = w.left[pos].snap_frame;
    reset(w, *snap);
    w.left[pos].prover->reseed(RngHandle(rng_->word()));
    return answer_vstep1(w, pos, vstep1, false);
  }

  bool recover_key(const World& w, std::size_t pos, const protocol::KeyRecord& key, const sigma::Transcript& t1) {
    for (std::size_t attempt = 0; attempt < cfg_.max_rewinds; ++attempt) {
      ++result_.stats.key_rewinds;
      ++attempts_;
      World c = *w.left[pos].snap;
      detail::LeftSession& s = c.left[pos];
      s.prover->force_pi_v_challenge(other_challenge(t1.e, *rng_));
      s.prover->reseed(RngHandle(rng_->word()));
      c.pending = answer_vstep1(c, pos, w.left[pos].snap_frame, false);

      const auto frame = lookahead(c, pos, std::nullopt);
      if (failed_) return false;
      if (!frame) continue;
      const auto t2 = c.left[pos].prover->check_pi_v(*frame);
      if (!t2 || t2->e == t1.e) continue;
      try {
        const sigma::Witness wit = sigma::extract_special_soundness(c.left[pos].prover->pi_v(), t1, *t2);
        const auto* ow = wit.get<sigma::OrWitness>();
        const auto* dp = ow->inner->get<sigma::DlPairWitness>();
        const int bit = static_cast<int>(ow->branch);
        known_[key_id(key)] = {bit, {dp->x, dp->y}, std::nullopt};
        recovered_.push_back({key.index, bit, {dp->x, dp->y}});
        ++hits_;
        return true;
      } catch (const Error&) {
        continue;
      }
    }
    return false;
  }

  void extract_witness(World& w, std::size_t pos) {
    const detail::RightSession& s = w.right[pos];
    const auto t1 = s.verifier->pi_p_transcript();
    for (std::size_t attempt = 0; attempt < cfg_.max_rewinds && t1; ++attempt) {
      ++result_.stats.witness_rewinds;
      ++attempts_;
      World c = *s.snap;
      detail::RightSession& cs = c.right[pos];
      cs.verifier->force_pi_p_challenge(other_challenge(t1->e, *rng_));
      cs.verifier->reseed(RngHandle(rng_->word()));
      c.pending = detail::emit_right(c, pos, cs.verifier->on_message(s.snap_frame));

      lookahead(c, std::nullopt, pos);
      if (failed_) return;
      const detail::RightSession& done = c.right[pos];
      if (!done.accepted) continue;
      const auto t2 = done.verifier->pi_p_transcript();
      if (!t2 || t2->e == t1->e) continue;
      ++hits_;
      const protocol::Verifier& v = *s.verifier;
      const RhoResult rho = predicate_rho(w.cfg, w.file->at(s.key_index), s.x, *v.commitment(), v.message(), *t1, *t2);
      result_.outcome = rho.outcome;
      result_.failure = rho.failure;
      result_.branch = rho.branch;
      result_.witness = rho.witness;
      result_.opening = rho.opening;
      result_.statement = s.x;
      result_.conversations = {*t1, *t2};
      done_ = true;
      return;
    }
    result_.failure = "rewinding budget exhausted at the target session";
    failed_ = true;
  }

  std::optional<Frame> lookahead(World& c, std::optional<std::size_t> left_goal, std::optional<std::size_t> right_goal) {
    const bool outer = lookahead_;
    lookahead_ = true;
    goal_left_ = left_goal;
    goal_right_ = right_goal.has_value();
    goal_frame_.reset();
    run(c);
    lookahead_ = outer;
    goal_left_.reset();
    goal_right_ = false;
    return std::move(goal_frame_);
  }

  void reset(World& w, const World& snap) {
    ++result_.stats.resets;
    w = snap;
    if (done_) {
      const std::size_t t = cfg_.target;
      if (t > w.right.size() || !w.right[t - 1].accepted) {
        done_ = false;
        ExtractionResult fresh;
        fresh.stats = result_.stats;
        result_ = std::move(fresh);
      }
    }
  }

  void fail(std::string why) {
    failed_ = true;
    result_.outcome = Outcome::kFailure;
    result_.failure = std::move(why);
  }

  const ExtractorConfig& cfg_;
  RngHandle rng_;
  std::map<Bytes, KnownKey> known_;
  std::vector<RecoveredKey> recovered_;
  ExtractionResult result_;
  bool done_ = false;
  bool failed_ = false;
  bool lookahead_ = false;
  std::optional<std::size_t> goal_left_;
  bool goal_right_ = false;
  std::optional<Frame> goal_frame_;
  std::size_t attempts_ = 0;
  std::size_t hits_ = 0;
};

}  // namespace

ExtractionResult run_extractor(const Adversary& prototype, const ExtractorConfig& cfg) {
  if (cfg.target == 0) throw Error("target session is 1-based");
  World w = detail::preprocess(prototype, cfg.attack);
  ExtractorDirector director(cfg, RngHandle(cfg.attack.seed ^ 0x9e3779b97f4a7c15ULL));
  director.learn_honest(w);
  director.run(w);
  return director.finish(w);
}

}  // namespace cnmzk::harness
