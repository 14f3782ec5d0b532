#include "cnmzk/session.hpp"

namespace cnmzk {
namespace {

void log_frame(std::vector<harness::LogRecord>& log, const char* direction, const wire::Frame& f) {
  log.push_back({log.size() + 1, "S1", direction, f.type, f.encode()});
}

void add(algebra::OpCounts& total, const algebra::CountScope& scope) {
  const algebra::OpCounts d = scope.delta();
  total.exponentiations += d.exponentiations;
  total.pairings += d.pairings;
}

}  // namespace

SessionSetup prepare_session(const SessionOptions& opts) {
  SessionSetup s;
  SeededRng rng(opts.seed);
  algebra::Suite suite = algebra::Suite::make(opts.params, opts.backend);
  s.cfg = protocol::Config::make(suite, opts.mode, opts.owf);
  s.keys = protocol::verifier_keygen(suite, rng);
  protocol::PublicFile file(suite);
  file.add(s.keys.vk0, s.keys.vk1, protocol::Owner::kHonest, "V1");
  file.freeze();
  s.file = std::make_shared<const protocol::PublicFile>(std::move(file));
  s.w = suite.group->random_nonzero(rng);
  s.x = suite.group->generator().pow(s.w);
  s.prover_seed = rng.word();
  s.verifier_seed = rng.word();
  return s;
}

SessionOutcome run_session(const SessionOptions& opts) {
  const SessionSetup s = prepare_session(opts);
  SessionOutcome out;
  out.x = s.x;
  protocol::Prover prover(s.cfg, s.file->at(1), s.x, protocol::RelationWitness{s.w}, RngHandle(s.prover_seed));
  protocol::Verifier verifier(s.cfg, s.file, s.keys.honest(1), RngHandle(s.verifier_seed));

  std::optional<wire::Frame> to_v;
  {
    algebra::CountScope scope;
    to_v = prover.start();
    add(out.prover, scope);
  }
  log_frame(out.log, "P>V", *to_v);
  while (to_v) {
    std::optional<wire::Frame> to_p;
    {
      algebra::CountScope scope;
      to_p = verifier.on_message(*to_v);
      add(out.verifier, scope);
    }
    if (!to_p) break;
    log_frame(out.log, "V>P", *to_p);
    if (to_p->type == wire::MsgType::kResult) break;
    ++out.messages_after_start;
    {
      algebra::CountScope scope;
      to_v = prover.on_message(*to_p);
      add(out.prover, scope);
    }
    if (to_v) {
      log_frame(out.log, "P>V", *to_v);
      ++out.messages_after_start;
    }
  }
  out.accepted = verifier.accepted();
  out.reject_reason = verifier.reject_reason();
  if (prover.aborted()) out.reject_reason = "prover aborted: " + prover.abort_reason();
  return out;
}

bool replay_session(const SessionOptions& opts, const std::vector<harness::LogRecord>& log) {
  const SessionSetup s = prepare_session(opts);
  protocol::Verifier verifier(s.cfg, s.file, s.keys.honest(1), RngHandle(s.verifier_seed));
  std::optional<wire::Frame> expected_reply;
  bool saw_result = false;
  for (const harness::LogRecord& r : log) {
    const wire::Frame f = wire::Frame::decode(r.frame);
    if (r.direction == "P>V") {
      if (expected_reply) return false;
      expected_reply = verifier.on_message(f);
      if (!expected_reply) return false;
    } else if (r.direction == "V>P") {
      if (!expected_reply || *expected_reply != f) return false;
      saw_result = saw_result || f.type == wire::MsgType::kResult;
      expected_reply.reset();
    } else {
      return false;
    }
  }
  return saw_result && !expected_reply && verifier.accepted();
}

}  // namespace cnmzk
