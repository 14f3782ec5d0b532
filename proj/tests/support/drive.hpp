#pragma once

// Step-by-step session driver with a hook that may rewrite any frame in flight.

#include <functional>

#include "cnmzk/session.hpp"

namespace fixtures {

struct DriveResult {
  bool accepted = false;
  bool prover_aborted = false;
  std::vector<cnmzk::wire::Frame> frames;
};

using Tamper = std::function<void(std::size_t index, cnmzk::wire::Frame&)>;

inline DriveResult drive(const cnmzk::SessionOptions& opts, const Tamper& tamper = {}) {
  using namespace cnmzk;
  const SessionSetup s = prepare_session(opts);
  protocol::Prover prover(s.cfg, s.file->at(1), s.x, protocol::RelationWitness{s.w}, RngHandle(s.prover_seed));
  protocol::Verifier verifier(s.cfg, s.file, s.keys.honest(1), RngHandle(s.verifier_seed));
  DriveResult out;
  std::optional<wire::Frame> f = prover.start();
  bool to_verifier = true;
  while (f) {
    if (tamper) tamper(out.frames.size(), *f);
    out.frames.push_back(*f);
    if (f->type == wire::MsgType::kResult) break;
    f = to_verifier ? verifier.on_message(*f) : prover.on_message(*f);
    to_verifier = !to_verifier;
  }
  out.accepted = verifier.accepted();
  out.prover_aborted = prover.aborted();
  return out;
}

}  // namespace fixtures
