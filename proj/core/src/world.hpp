#pragma once

// Scheduler state shared by the real attack run and the extractor.

#include <map>

#include "cnmzk/attack.hpp"

namespace cnmzk::harness::detail {

struct World;
using Snapshot = std::shared_ptr<const World>;

struct LeftSession {
  std::size_t id = 0;
  std::size_t statement = 0;  // position in Setup::left_statements
  std::size_t key_index = 0;
  protocol::KeyRecord key;
  std::optional<protocol::KeyRecord> substitute;
  std::optional<protocol::Prover> prover;
  std::vector<Frame> frames;
  bool finished = false;

  bool placeholder = false;
  Snapshot snap;
  Frame snap_frame;
};

struct RightSession {
  std::size_t id = 0;
  Element x;
  std::size_t key_index = 0;
  std::optional<protocol::Verifier> verifier;
  std::vector<Frame> frames;
  bool finished = false;
  bool accepted = false;

  Snapshot snap;
  Frame snap_frame;
};

struct World {
  AttackConfig config;
  protocol::Config cfg;
  std::shared_ptr<const protocol::PublicFile> file;
  Setup setup;
  std::map<std::size_t, protocol::VerifierKeys> honest_keys;
  std::vector<algebra::Scalar> left_witnesses;

  AdversaryHandle adv;
  RngHandle rng;
  std::vector<LeftSession> left;
  std::vector<RightSession> right;
  std::vector<LogRecord> log;

  Event pending = Begin{};
  std::size_t steps = 0;
  bool ended = false;
  bool aborted = false;
  std::string diagnostic;
  std::vector<std::string> refusals;
  std::vector<Bytes> delivered;

  bool running() const { return !ended && !aborted; }
  RngHandle child_rng() { return RngHandle(std::make_unique<SeededRng>(rng->word())); }
};

World preprocess(const Adversary& prototype, const AttackConfig& config);

/// How the honest parties (or their simulator) answer the adversary. Handlers
/// receive session positions, not references: a handler may replace the
/// whole world with a snapshot.
class Director {
 public:
  virtual ~Director() = default;
  virtual Event start_left(World& w, std::size_t pos) = 0;
  virtual Event deliver_left(World& w, std::size_t pos, const Frame& f) = 0;
  virtual void open_right(World& w, std::size_t pos) = 0;
  virtual Event deliver_right(World& w, std::size_t pos, const Frame& f) = 0;
};

/// One adversary action.
void step(World& w, Director& d);

Event emit_left(World& w, std::size_t pos, std::optional<Frame> out);
Event emit_right(World& w, std::size_t pos, std::optional<Frame> out);

class HonestDirector final : public Director {
 public:
  Event start_left(World& w, std::size_t pos) override;
  Event deliver_left(World& w, std::size_t pos, const Frame& f) override;
  void open_right(World& w, std::size_t pos) override;
  Event deliver_right(World& w, std::size_t pos, const Frame& f) override;
};

View to_view(const World& w);

}  // namespace cnmzk::harness::detail
