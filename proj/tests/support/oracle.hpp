#pragma once

// Test-only oracles. Nothing here calls into the library's arithmetic.

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include <gmpxx.h>

#include "cnmzk/rng.hpp"

namespace oracle {

inline std::uint64_t modpow(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  for (std::uint64_t i = 0; i < e; ++i) r = r * b % m;
  return r;
}

inline std::uint64_t modinv(std::uint64_t a, std::uint64_t m) {
  for (std::uint64_t x = 1; x < m; ++x) {
    if (a % m * x % m == 1) return x;
  }
  return 0;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::uint64_t order_of(std::uint64_t g, std::uint64_t p) {
  std::uint64_t x = g % p;
  for (std::uint64_t k = 1; k < p; ++k) {
    if (x == 1) return k;
    x = x * g % p;
  }
  return 0;
}

/// Walks every path of a randomized computation: each below() call is one
/// odometer digit. After a run, advance() moves to the next path.
class EnumRng final : public cnmzk::Rng {
 public:
  mpz_class below(const mpz_class& bound) override {
    if (pos_ < values_.size()) {
      if (bounds_[pos_] != bound) throw cnmzk::Error("enumeration paths have different shapes");
      return values_[pos_++];
    }
    values_.push_back(0);
    bounds_.push_back(bound);
    ++pos_;
    return 0;
  }
  std::unique_ptr<cnmzk::Rng> clone() const override { return std::make_unique<EnumRng>(*this); }

  /// Drops draws past the current position (a path that ended early).
  bool advance() {
    values_.resize(pos_);
    bounds_.resize(pos_);
    pos_ = 0;
    while (!values_.empty()) {
      values_.back() += 1;
      if (values_.back() < bounds_.back()) return true;
      values_.pop_back();
      bounds_.pop_back();
    }
    return false;
  }

 private:
  std::vector<mpz_class> values_, bounds_;
  std::size_t pos_ = 0;
};

/// Multiset of outcomes, one entry per enumerated path.
template <class Key>
struct Distribution {
  std::map<Key, std::uint64_t> counts;
  std::uint64_t total = 0;

  void add(const Key& k) {
    ++counts[k];
    ++total;
  }

  /// Equal as probability distributions (cross-multiplied counts).
  bool same_as(const Distribution& o) const {
    if (counts.size() != o.counts.size()) return false;
    for (const auto& [k, c] : counts) {
      auto it = o.counts.find(k);
      if (it == o.counts.end() || c * o.total != it->second * total) return false;
    }
    return true;
  }
};

/// Runs f(rng) once per path and collects its result.
template <class Key, class F>
Distribution<Key> enumerate(F&& f) {
  Distribution<Key> d;
  EnumRng rng;
  do {
    if (auto k = f(rng)) d.add(*k);
  } while (rng.advance());
  return d;
}

}  // namespace oracle
