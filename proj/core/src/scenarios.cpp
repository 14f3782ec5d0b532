#include "cnmzk/scenarios.hpp"

namespace cnmzk::harness {
namespace {

RngHandle child(Rng& rng) { return RngHandle(std::make_unique<SeededRng>(rng.word())); }

class NullAdversary final : public Adversary {
 public:
  std::unique_ptr<Adversary> clone() const override { return std::make_unique<NullAdversary>(*this); }
  std::string name() const override { return "null"; }
  void register_keys(Registrar&) override {}
  void begin(const Setup&) override {}

 protected:
  Action step(const Event&) override { return EndAttack{}; }
};

class RelayAdversary final : public Adversary {
 public:
  explicit RelayAdversary(bool maul) : maul_(maul) {}
  std::unique_ptr<Adversary> clone() const override { return std::make_unique<RelayAdversary>(*this); }
  std::string name() const override { return maul_ ? "maul" : "relay"; }

  void register_keys(Registrar& reg) override { rng_ = RngHandle(reg.tape()); }
  void begin(const Setup& setup) override {
    setup_ = setup;
    flip_second_ = rng_->bit();
  }

 protected:
  Action step(const Event& e) override {
    if (std::holds_alternative<Begin>(e)) {
      return StartLeft{setup_.left_statements.at(0), setup_.honest_keys.at(0), std::nullopt};
    }
    if (const auto* o = std::get_if<Opened>(&e)) {
      right_ = o->session;
      return DeliverRight{right_, start_};
    }
    const auto* r = std::get_if<Reply>(&e);
    if (!r || !r->frame) return EndAttack{};
    const Frame& f = *r->frame;
    if (r->side == Side::kLeft) {
      if (f.type == wire::MsgType::kStart) {
        left_ = r->session;
        start_ = f;
        return StartRight{setup_.left_statements.at(0), setup_.honest_keys.at(0)};
      }
      const bool second = f.type == wire::MsgType::kPStep2;
      return DeliverRight{right_, maul_ && second == flip_second_ ? flip(f) : f};
    }
    if (f.type == wire::MsgType::kResult) return EndAttack{};
    return DeliverLeft{left_, f};
  }

 private:
  Frame flip(Frame f) {
    if (f.payload.empty()) return f;
    const auto bit = static_cast<std::size_t>(rng_->below(mpz_class(static_cast<unsigned long>(f.payload.size() * 8))).get_ui());
    f.payload[bit / 8] ^= static_cast<std::uint8_t>(0x80u >> (bit % 8));
    return f;
  }

  bool maul_;
  RngHandle rng_;
  Setup setup_;
  bool flip_second_ = false;
  std::size_t left_ = 0, right_ = 0;
  Frame start_;
};

// Scripted adversary that plays honest verifiers in its left sessions and
// honest provers in its right sessions, following a fixed schedule. A step
// whose input is not available (the other side aborted) is skipped.
enum class Move { kLeftStart, kLeftSend, kRightOpen, kRightSend };

struct Script {
  std::string name;
  bool own_key = false;
  std::size_t left_slots = 0;
  std::size_t right_slots = 0;
  std::vector<std::pair<Move, std::size_t>> schedule;
};

class PuppetAdversary final : public Adversary {
 public:
  explicit PuppetAdversary(Script script) : script_(std::move(script)) {}
  std::unique_ptr<Adversary> clone() const override { return std::make_unique<PuppetAdversary>(*this); }
  std::string name() const override { return script_.name; }

  void register_keys(Registrar& reg) override {
    rng_ = RngHandle(reg.tape());
    if (script_.own_key) {
      keys_ = protocol::verifier_keygen(reg.suite(), *rng_);
      own_index_ = reg.add(keys_->vk0, keys_->vk1, "A");
    }
  }

  void begin(const Setup& setup) override {
    setup_ = setup;
    left_.assign(script_.left_slots, {});
    right_.assign(script_.right_slots, {});
    const auto& group = setup.cfg.suite.group;
    for (RightSlot& s : right_) {
      s.w = group->random_nonzero(*rng_);
      s.x = group->generator().pow(s.w);
    }
  }

 protected:
  Action step(const Event& e) override {
    if (awaiting_) absorb(*awaiting_, e);
    awaiting_.reset();
    while (cursor_ < script_.schedule.size()) {
      const auto move = script_.schedule[cursor_++];
      if (auto a = emit(move)) {
        awaiting_ = move;
        return *a;
      }
    }
    return EndAttack{};
  }

 private:
  struct LeftSlot {
    std::size_t session = 0;
    std::optional<protocol::Verifier> verifier;
    std::optional<Frame> outbox;
  };
  struct RightSlot {
    algebra::Scalar w;
    Element x;
    std::size_t session = 0;
    std::optional<protocol::Prover> prover;
    std::optional<Frame> outbox;
  };

  std::size_t left_key() const { return script_.own_key ? own_index_ : setup_.honest_keys.at(0); }

  std::optional<Action> emit(std::pair<Move, std::size_t> move) {
    const std::size_t k = move.second;
    switch (move.first) {
      case Move::kLeftStart:
        return StartLeft{setup_.left_statements.at(k % setup_.left_statements.size()), left_key(), std::nullopt};
      case Move::kLeftSend: {
        LeftSlot& s = left_[k];
        if (!s.session || !s.outbox) return std::nullopt;
        Action a = DeliverLeft{s.session, *s.outbox};
        s.outbox.reset();
        return a;
      }
      case Move::kRightOpen:
        return StartRight{right_[k].x, setup_.honest_keys.at(0)};
      case Move::kRightSend: {
        RightSlot& s = right_[k];
        if (!s.session || !s.outbox) return std::nullopt;
        Action a = DeliverRight{s.session, *s.outbox};
        s.outbox.reset();
        return a;
      }
    }
    return std::nullopt;
  }

  void absorb(std::pair<Move, std::size_t> move, const Event& e) {
    const auto* reply = std::get_if<Reply>(&e);
    switch (move.first) {
      case Move::kLeftStart:
      case Move::kLeftSend: {
        LeftSlot& s = left_[move.second];
        if (!reply || !reply->frame) return;
        if (move.first == Move::kLeftStart) {
          if (!keys_) return;
          s.session = reply->session;
          s.verifier.emplace(setup_.cfg, setup_.file, keys_->honest(own_index_), child(*rng_));
        }
        if (!s.verifier) return;
        auto out = s.verifier->on_message(*reply->frame);
        if (out && out->type != wire::MsgType::kResult) s.outbox = std::move(out);
        return;
      }
      case Move::kRightOpen: {
        const auto* opened = std::get_if<Opened>(&e);
        if (!opened) return;
        RightSlot& s = right_[move.second];
        s.session = opened->session;
        s.prover.emplace(setup_.cfg, setup_.file->at(setup_.honest_keys.at(0)), s.x, protocol::RelationWitness{s.w},
                         child(*rng_));
        s.outbox = s.prover->start();
        return;
      }
      case Move::kRightSend: {
        RightSlot& s = right_[move.second];
        if (!reply || !reply->frame || reply->frame->type == wire::MsgType::kResult) return;
        s.outbox = s.prover->on_message(*reply->frame);
        return;
      }
    }
  }

  Script script_;
  RngHandle rng_;
  std::optional<protocol::VerifierKeys> keys_;
  std::size_t own_index_ = 0;
  Setup setup_;
  std::vector<LeftSlot> left_;
  std::vector<RightSlot> right_;
  std::size_t cursor_ = 0;
  std::optional<std::pair<Move, std::size_t>> awaiting_;
};

class SubstitutionAdversary final : public Adversary {
 public:
  std::unique_ptr<Adversary> clone() const override { return std::make_unique<SubstitutionAdversary>(*this); }
  std::string name() const override { return "bpk_substitution"; }

  void register_keys(Registrar& reg) override {
    rng_ = RngHandle(reg.tape());
    keys_ = protocol::verifier_keygen(reg.suite(), *rng_);
  }

  void begin(const Setup& setup) override {
    setup_ = setup;
    protocol::PublicFile mine(setup.cfg.suite);
    record_ = mine.at(mine.add(keys_.vk0, keys_.vk1, protocol::Owner::kAdversary, "A"));
    mine.freeze();
    file_ = std::make_shared<const protocol::PublicFile>(std::move(mine));
  }

 protected:
  Action step(const Event& e) override {
    if (std::holds_alternative<Begin>(e)) {
      return StartLeft{setup_.left_statements.at(0), record_.index, record_};
    }
    const auto* r = std::get_if<Reply>(&e);
    if (!r || !r->frame) return EndAttack{};
    if (r->frame->type == wire::MsgType::kStart) {
      session_ = r->session;
      verifier_.emplace(setup_.cfg, file_, keys_.honest(record_.index), child(*rng_));
    }
    auto out = verifier_->on_message(*r->frame);
    if (!out || out->type == wire::MsgType::kResult) return EndAttack{};
    return DeliverLeft{session_, *out};
  }

 private:
  RngHandle rng_;
  protocol::VerifierKeys keys_;
  Setup setup_;
  protocol::KeyRecord record_;
  std::shared_ptr<const protocol::PublicFile> file_;
  std::optional<protocol::Verifier> verifier_;
  std::size_t session_ = 0;
};

Script knowledgeable_script() {
  return {"knowledgeable", false, 0, 1,
          {{Move::kRightOpen, 0}, {Move::kRightSend, 0}, {Move::kRightSend, 0}, {Move::kRightSend, 0}}};
}

Script self_register_script() {
  return {"self_register", true, 1, 0, {{Move::kLeftStart, 0}, {Move::kLeftSend, 0}, {Move::kLeftSend, 0}}};
}

Script wrapped_script() {
  return {"wrapped",
          true,
          2,
          2,
          {{Move::kLeftStart, 0},
           {Move::kRightOpen, 0},
           {Move::kRightSend, 0},
           {Move::kLeftSend, 0},
           {Move::kLeftStart, 1},
           {Move::kRightSend, 0},
           {Move::kLeftSend, 1},
           {Move::kRightOpen, 1},
           {Move::kRightSend, 1},
           {Move::kRightSend, 1},
           {Move::kLeftSend, 1},
           {Move::kRightSend, 1},
           {Move::kRightSend, 0},
           {Move::kLeftSend, 0}}};
}

}  // namespace

std::vector<std::string> scenario_names() {
  return {"null", "relay", "maul", "knowledgeable", "wrapped", "self_register", "bpk_substitution"};
}

std::unique_ptr<Adversary> make_scenario(std::string_view name) {
  if (name == "null") return std::make_unique<NullAdversary>();
  if (name == "relay") return std::make_unique<RelayAdversary>(false);
  if (name == "maul") return std::make_unique<RelayAdversary>(true);
  if (name == "knowledgeable") return std::make_unique<PuppetAdversary>(knowledgeable_script());
  if (name == "wrapped") return std::make_unique<PuppetAdversary>(wrapped_script());
  if (name == "self_register") return std::make_unique<PuppetAdversary>(self_register_script());
  if (name == "bpk_substitution") return std::make_unique<SubstitutionAdversary>();
  throw Error("unknown scenario: " + std::string(name));
}

std::size_t scenario_target(std::string_view name) {
  if (name == "relay" || name == "maul" || name == "knowledgeable" || name == "wrapped") return 1;
  make_scenario(name);
  return 0;
}

}  // namespace cnmzk::harness
