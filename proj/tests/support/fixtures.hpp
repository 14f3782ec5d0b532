#pragma once

#include "cnmzk/algebra.hpp"
#include "cnmzk/sigma.hpp"

namespace fixtures {

using cnmzk::algebra::PairingBackend;
using cnmzk::algebra::Suite;

inline Suite transparent() { return Suite::make(cnmzk::algebra::test_params(), PairingBackend::Kind::kTransparent); }
inline Suite schnorr() { return Suite::make(cnmzk::algebra::test_params(), PairingBackend::Kind::kSchnorr); }

inline std::vector<Suite> both_backends() { return {transparent(), schnorr()}; }

inline std::string backend_name(const Suite& s) { return s.pairing.name(); }

/// Smallest integer representation of each field, packed 5 bits apiece.
/// Exact for every group and scalar at p = 23.
inline std::uint64_t pack(const cnmzk::sigma::Payload& p, std::uint64_t acc = 0) {
  for (const auto& f : p) {
    mpz_class v;
    if (const auto* e = std::get_if<cnmzk::algebra::Element>(&f)) v = e->to_integer();
    if (const auto* s = std::get_if<cnmzk::algebra::Scalar>(&f)) v = s->value();
    if (const auto* c = std::get_if<cnmzk::sigma::Challenge>(&f)) v = c->value();
    acc = acc << 5 | v.get_ui();
  }
  return acc;
}

}  // namespace fixtures
