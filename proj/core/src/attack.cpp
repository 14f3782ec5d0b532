#include "cnmzk/attack.hpp"

#include "cnmzk/digest.hpp"
#include "world.hpp"

namespace cnmzk::harness {
namespace detail {
namespace {

class FileRegistrar final : public Registrar {
 public:
  FileRegistrar(protocol::PublicFile& file, std::uint64_t tape) : file_(file), tape_(tape) {}
  const algebra::Suite& suite() const override { return file_.suite(); }
  std::uint64_t tape() const override { return tape_; }
  std::size_t add(const sig::BBVerKey& vk0, const sig::BBVerKey& vk1, std::string owner_id) override {
    return file_.add(vk0, vk1, protocol::Owner::kAdversary, std::move(owner_id));
  }

 private:
  protocol::PublicFile& file_;
  std::uint64_t tape_;
};

void record(World& w, const std::string& session, const char* direction, const Frame& f) {
  w.log.push_back({w.log.size() + 1, session, direction, f.type, f.encode()});
}

std::string left_name(const LeftSession& s) { return "L" + std::to_string(s.id); }
std::string right_name(const RightSession& s) { return "R" + std::to_string(s.id); }

void abort_attack(World& w, std::string why) {
  w.aborted = true;
  w.diagnostic = std::move(why);
}

Event refuse(World& w, std::string why) {
  w.refusals.push_back(why);
  return Refused{std::move(why)};
}

}  // namespace

World preprocess(const Adversary& prototype, const AttackConfig& config) {
  World w;
  w.config = config;
  SeededRng rng(config.seed);
  algebra::Suite suite = algebra::Suite::make(config.params, config.backend);
  w.cfg = protocol::Config::make(suite, config.mode, config.owf);

  protocol::PublicFile file(suite);
  for (std::size_t i = 0; i < config.honest_verifiers; ++i) {
    protocol::VerifierKeys keys = protocol::verifier_keygen(suite, rng);
    const std::size_t idx = file.add(keys.vk0, keys.vk1, protocol::Owner::kHonest, "V" + std::to_string(i + 1));
    w.honest_keys.emplace(idx, std::move(keys));
    w.setup.honest_keys.push_back(idx);
  }
  for (std::size_t k = 0; k < config.left_statements; ++k) {
    const algebra::Scalar wit = suite.group->random_nonzero(rng);
    w.left_witnesses.push_back(wit);
    w.setup.left_statements.push_back(suite.group->generator().pow(wit));
  }

  w.adv = AdversaryHandle(prototype.clone());
  FileRegistrar reg(file, rng.word());
  w.adv->register_keys(reg);
  file.freeze();

  w.file = std::make_shared<const protocol::PublicFile>(std::move(file));
  w.setup.file = w.file;
  w.setup.cfg = w.cfg;
  w.setup.apk = config.apk;
  w.adv->begin(w.setup);
  w.rng = RngHandle(rng.clone());
  return w;
}

Event emit_left(World& w, std::size_t pos, std::optional<Frame> out) {
  LeftSession& s = w.left[pos];
  if (out) {
    record(w, left_name(s), "P>A", *out);
    s.frames.push_back(*out);
    if (out->type == wire::MsgType::kPStep2) s.finished = true;
  }
  return Reply{Side::kLeft, s.id, std::move(out)};
}

Event emit_right(World& w, std::size_t pos, std::optional<Frame> out) {
  RightSession& s = w.right[pos];
  if (out) {
    record(w, right_name(s), "V>A", *out);
    s.frames.push_back(*out);
  }
  if (s.verifier && s.verifier->done()) {
    s.finished = true;
    s.accepted = s.verifier->accepted();
  }
  return Reply{Side::kRight, s.id, std::move(out)};
}

void step(World& w, Director& d) {
  if (!w.running()) return;
  if (++w.steps > w.config.max_steps) {
    abort_attack(w, "step budget exhausted");
    return;
  }
  w.delivered.push_back(default_digest().hash(encode_event(w.pending)));
  const Action action = w.adv->deliver(w.pending);

  if (const auto* a = std::get_if<StartLeft>(&action)) {
    if (a->substitute && w.config.apk) {
      w.pending = refuse(w, "key substitution is not expressible with an authenticated public file");
      return;
    }
    std::size_t k = 0;
    while (k < w.setup.left_statements.size() && w.setup.left_statements[k] != a->y) ++k;
    if (k == w.setup.left_statements.size()) {
      w.pending = refuse(w, "the honest prover holds no witness for this statement");
      return;
    }
    LeftSession s;
    s.id = w.left.size() + 1;
    s.statement = k;
    s.key_index = a->key_index;
    if (a->substitute) {
      if (!a->substitute->vk0.well_formed(w.cfg.suite.pairing) || !a->substitute->vk1.well_formed(w.cfg.suite.pairing)) {
        w.pending = refuse(w, "substituted key is malformed");
        return;
      }
      s.key = *a->substitute;
      s.substitute = a->substitute;
    } else {
      if (!w.file->contains(a->key_index)) {
        abort_attack(w, "StartLeft names an unknown key index");
        return;
      }
      s.key = w.file->at(a->key_index);
    }
    w.left.push_back(std::move(s));
    w.pending = d.start_left(w, w.left.size() - 1);
  } else if (const auto* a = std::get_if<StartRight>(&action)) {
    if (!w.honest_keys.contains(a->key_index)) {
      abort_attack(w, "StartRight must name a key registered by an honest verifier");
      return;
    }
    RightSession s;
    s.id = w.right.size() + 1;
    s.x = a->x;
    s.key_index = a->key_index;
    w.right.push_back(std::move(s));
    d.open_right(w, w.right.size() - 1);
    w.pending = Opened{w.right.size()};
  } else if (const auto* a = std::get_if<DeliverLeft>(&action)) {
    if (a->session < 1 || a->session > w.left.size()) {
      abort_attack(w, "DeliverLeft names an unknown session");
      return;
    }
    const std::size_t pos = a->session - 1;
    record(w, left_name(w.left[pos]), "A>P", a->frame);
    w.left[pos].frames.push_back(a->frame);
    w.pending = d.deliver_left(w, pos, a->frame);
  } else if (const auto* a = std::get_if<DeliverRight>(&action)) {
    if (a->session < 1 || a->session > w.right.size()) {
      abort_attack(w, "DeliverRight names an unknown session");
      return;
    }
    const std::size_t pos = a->session - 1;
    record(w, right_name(w.right[pos]), "A>V", a->frame);
    w.right[pos].frames.push_back(a->frame);
    w.pending = d.deliver_right(w, pos, a->frame);
  } else {
    w.ended = true;
  }
}

Event HonestDirector::start_left(World& w, std::size_t pos) {
  LeftSession& s = w.left[pos];
  s.prover.emplace(w.cfg, s.key, w.setup.left_statements[s.statement],
                   protocol::RelationWitness{w.left_witnesses[s.statement]}, w.child_rng());
  return emit_left(w, pos, s.prover->start());
}

Event HonestDirector::deliver_left(World& w, std::size_t pos, const Frame& f) {
  return emit_left(w, pos, w.left[pos].prover->on_message(f));
}

void HonestDirector::open_right(World& w, std::size_t pos) {
  RightSession& s = w.right[pos];
  s.verifier.emplace(w.cfg, w.file, w.honest_keys.at(s.key_index).honest(s.key_index), w.child_rng());
}

Event HonestDirector::deliver_right(World& w, std::size_t pos, const Frame& f) {
  return emit_right(w, pos, w.right[pos].verifier->on_message(f));
}

View to_view(const World& w) {
  View v;
  v.seed = w.config.seed;
  v.file = w.file;
  for (const LeftSession& s : w.left) {
    v.left.push_back({s.id, w.setup.left_statements[s.statement], s.key_index, s.substitute, s.frames, s.finished,
                      false});
  }
  for (const RightSession& s : w.right) {
    v.right.push_back({s.id, s.x, s.key_index, std::nullopt, s.frames, s.finished, s.accepted});
  }
  v.log = w.log;
  v.refusals = w.refusals;
  v.aborted = w.aborted;
  v.diagnostic = w.diagnostic;
  v.delivered = w.delivered;
  return v;
}

}  // namespace detail

View run_attack(const Adversary& prototype, const AttackConfig& cfg) {
  detail::World w = detail::preprocess(prototype, cfg);
  detail::HonestDirector director;
  while (w.running()) detail::step(w, director);
  return detail::to_view(w);
}

bool q_excluded(const View& view, std::size_t right_session) {
  if (right_session < 1 || right_session > view.right.size()) return false;
  std::vector<Frame> frames;
  for (const Frame& f : view.right[right_session - 1].frames) {
    if (f.type != wire::MsgType::kResult) frames.push_back(f);
  }
  for (const SessionView& l : view.left) {
    if (l.frames == frames) return true;
  }
  return false;
}

bool attack_succeeded(const View& view, std::size_t right_session) {
  if (right_session < 1 || right_session > view.right.size()) return false;
  return view.right[right_session - 1].accepted && !q_excluded(view, right_session);
}

double estimate_success(const Adversary& prototype, std::size_t right_session, std::size_t trials,
                        const AttackConfig& cfg) {
  if (trials == 0) throw Error("estimate_success needs at least one trial");
  std::size_t wins = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    AttackConfig c = cfg;
    c.seed = cfg.seed + t;
    if (attack_succeeded(run_attack(prototype, c), right_session)) ++wins;
  }
  return static_cast<double>(wins) / static_cast<double>(trials);
}

std::vector<std::string> type_sequence(const View& view) {
  std::vector<std::string> out;
  out.reserve(view.log.size());
  for (const LogRecord& r : view.log) {
    out.push_back(r.session + ":" + r.direction + ":" + std::string(wire::to_string(r.type)));
  }
  return out;
}

}  // namespace cnmzk::harness
