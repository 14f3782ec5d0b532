#include "cnmzk/adversary.hpp"

#include "cnmzk/digest.hpp"

namespace cnmzk::harness {

Bytes encode_event(const Event& e) {
  Writer w;
  w.u8(static_cast<std::uint8_t>(e.index()));
  if (const auto* o = std::get_if<Opened>(&e)) {
    w.u32(static_cast<std::uint32_t>(o->session));
  } else if (const auto* r = std::get_if<Reply>(&e)) {
    w.u8(r->side == Side::kLeft ? 0 : 1).u32(static_cast<std::uint32_t>(r->session));
    w.u8(r->frame ? 1 : 0);
    if (r->frame) w.blob(r->frame->encode());
  } else if (const auto* f = std::get_if<Refused>(&e)) {
    w.blob(Bytes(f->reason.begin(), f->reason.end()));
  }
  return std::move(w).bytes();
}

Action Adversary::deliver(const Event& e) {
  seen_.push_back(default_digest().hash(encode_event(e)));
  return step(e);
}

}  // namespace cnmzk::harness
