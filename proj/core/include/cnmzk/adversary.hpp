#pragma once

// The man-in-the-middle attack model. The adversary is a deterministic state
// machine: each event it receives yields exactly one action.

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cnmzk/protocol.hpp"

namespace cnmzk::harness {

using algebra::Element;
using wire::Frame;

enum class Side { kLeft, kRight };

// ---------------------------------------------------------------- actions

/// Ask the honest prover to prove y under key `key_index`. `substitute`
/// replaces the key the prover reads; only expressible without authentication.
struct StartLeft {
  Element y;
  std::size_t key_index = 0;
  std::optional<protocol::KeyRecord> substitute;
};
/// Open a session with the honest verifier owning `key_index`.
struct StartRight {
  Element x;
  std::size_t key_index = 0;
};
struct DeliverLeft {
  std::size_t session = 0;
  Frame frame;
};
struct DeliverRight {
  std::size_t session = 0;
  Frame frame;
};
struct EndAttack {};

using Action = std::variant<StartLeft, StartRight, DeliverLeft, DeliverRight, EndAttack>;

// ---------------------------------------------------------------- events

struct Begin {};
/// A right session now exists and awaits START.
struct Opened {
  std::size_t session = 0;
};
/// The honest party's answer; empty when it aborted or stayed silent.
struct Reply {
  Side side = Side::kLeft;
  std::size_t session = 0;
  std::optional<Frame> frame;
};
struct Refused {
  std::string reason;
};

using Event = std::variant<Begin, Opened, Reply, Refused>;

/// Canonical bytes of an event, used to compare views.
Bytes encode_event(const Event& e);

// ---------------------------------------------------------------- setup

struct Setup {
  std::shared_ptr<const protocol::PublicFile> file;
  protocol::Config cfg;
  std::vector<std::size_t> honest_keys;
  /// Statements the honest prover holds witnesses for.
  std::vector<Element> left_statements;
  bool apk = true;
};

class Registrar {
 public:
  virtual ~Registrar() = default;
  virtual const algebra::Suite& suite() const = 0;
  /// Seed of the adversary's random tape for this run.
  virtual std::uint64_t tape() const = 0;
  virtual std::size_t add(const sig::BBVerKey& vk0, const sig::BBVerKey& vk1, std::string owner_id) = 0;
};

class Adversary {
 public:
  virtual ~Adversary() = default;

  virtual std::unique_ptr<Adversary> clone() const = 0;
  virtual std::string name() const = 0;

  /// Preprocessing: may register keys. Always called once, before begin().
  virtual void register_keys(Registrar& reg) = 0;
  virtual void begin(const Setup& setup) = 0;

  /// Records a digest of the event, then steps.
  Action deliver(const Event& e);
  const std::vector<Bytes>& seen() const { return seen_; }

 protected:
  virtual Action step(const Event& e) = 0;

 private:
  std::vector<Bytes> seen_;
};

/// Deep-copying owner of an adversary.
class AdversaryHandle {
 public:
  AdversaryHandle() = default;
  explicit AdversaryHandle(std::unique_ptr<Adversary> a) : a_(std::move(a)) {}
  AdversaryHandle(const AdversaryHandle& o) : a_(o.a_ ? o.a_->clone() : nullptr) {}
  AdversaryHandle& operator=(const AdversaryHandle& o) {
    if (this != &o) a_ = o.a_ ? o.a_->clone() : nullptr;
    return *this;
  }
  AdversaryHandle(AdversaryHandle&&) noexcept = default;
  AdversaryHandle& operator=(AdversaryHandle&&) noexcept = default;

  Adversary* operator->() const { return a_.get(); }
  Adversary& operator*() const { return *a_; }

 private:
  std::unique_ptr<Adversary> a_;
};

}  // namespace cnmzk::harness
