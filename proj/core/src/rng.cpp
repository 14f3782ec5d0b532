#include "cnmzk/rng.hpp"

#include <string>

namespace cnmzk {

mpz_class Rng::nonzero_below(const mpz_class& bound) {
  if (bound <= 1) throw Error("nonzero_below: empty range");
  return below(bound - 1) + 1;
}

Bytes Rng::bytes(std::size_t n) {
  Bytes out(n);
  const mpz_class b256 = 256;
  for (auto& byte : out) byte = static_cast<std::uint8_t>(below(b256).get_ui());
  return out;
}

std::uint64_t Rng::word() {
  mpz_class bound = 1;
  bound <<= 64;
  mpz_class v = below(bound);
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, v.get_mpz_t());
  return out;
}

mpz_class SeededRng::below(const mpz_class& bound) {
  if (bound <= 0) throw Error("below: bound must be positive");
  if (bound == 1) return 0;
  const mpz_class top = bound - 1;
  const std::size_t bits = mpz_sizeinbase(top.get_mpz_t(), 2);
  const std::size_t words = (bits + 63) / 64;
  mpz_class mask = 1;
  mask <<= bits;
  mask -= 1;
  for (;;) {
    mpz_class v = 0;
    for (std::size_t i = 0; i < words; ++i) {
      v <<= 64;
      const std::uint64_t w = engine_();
      mpz_class part;
      mpz_import(part.get_mpz_t(), 1, -1, sizeof(w), 0, 0, &w);
      v += part;
    }
    v &= mask;
    if (v < bound) return v;
  }
}

Bytes SeededRng::bytes(std::size_t n) {
  Bytes out;
  out.reserve(n + 8);
  while (out.size() < n) {
    std::uint64_t w = engine_();
    for (int i = 0; i < 8 && out.size() < n; ++i) {
      out.push_back(static_cast<std::uint8_t>(w & 0xff));
      w >>= 8;
    }
  }
  return out;
}

ScriptedRng::ScriptedRng(std::initializer_list<long> values) {
  for (long v : values) values_.emplace_back(v);
}

mpz_class ScriptedRng::next() {
  if (values_.empty()) throw Error("scripted randomness exhausted");
  mpz_class v = values_.front();
  values_.pop_front();
  return v;
}

mpz_class ScriptedRng::below(const mpz_class& bound) {
  mpz_class v = next();
  if (v < 0 || v >= bound) {
    throw Error("scripted value " + v.get_str() + " outside [0, " + bound.get_str() + ")");
  }
  return v;
}

mpz_class ScriptedRng::nonzero_below(const mpz_class& bound) {
  mpz_class v = next();
  if (v < 1 || v >= bound) {
    throw Error("scripted value " + v.get_str() + " outside [1, " + bound.get_str() + ")");
  }
  return v;
}

}  // namespace cnmzk
