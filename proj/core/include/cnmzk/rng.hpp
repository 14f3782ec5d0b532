#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <random>

#include <gmpxx.h>

#include "cnmzk/error.hpp"

namespace cnmzk {

/// Injected randomness source. Every draw goes through below(), so a scripted
/// source can pin any protocol run to exact values.
class Rng {
 public:
  virtual ~Rng() = default;

  /// Uniform integer in [0, bound). bound must be positive.
  virtual mpz_class below(const mpz_class& bound) = 0;

  /// Uniform integer in [1, bound).
  virtual mpz_class nonzero_below(const mpz_class& bound);

  virtual Bytes bytes(std::size_t n);
  virtual std::uint64_t word();
  bool bit() { return below(2) == 1; }

  virtual std::unique_ptr<Rng> clone() const = 0;
};

/// mt19937_64 with portable rejection sampling: identical seeds give identical
/// streams on every platform and standard library.
class SeededRng final : public Rng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  mpz_class below(const mpz_class& bound) override;
  Bytes bytes(std::size_t n) override;
  std::uint64_t word() override { return engine_(); }
  std::unique_ptr<Rng> clone() const override { return std::make_unique<SeededRng>(*this); }

 private:
  std::mt19937_64 engine_;
};

/// Replays a fixed list of values; used to reproduce worked examples.
class ScriptedRng final : public Rng {
 public:
  ScriptedRng(std::initializer_list<long> values);
  explicit ScriptedRng(std::deque<mpz_class> values) : values_(std::move(values)) {}

  mpz_class below(const mpz_class& bound) override;
  mpz_class nonzero_below(const mpz_class& bound) override;
  std::unique_ptr<Rng> clone() const override { return std::make_unique<ScriptedRng>(*this); }

  std::size_t remaining() const { return values_.size(); }

 private:
  mpz_class next();
  std::deque<mpz_class> values_;
};

/// Value-semantic owner of an Rng (deep copies on copy).
class RngHandle {
 public:
  RngHandle() = default;
  explicit RngHandle(std::unique_ptr<Rng> rng) : rng_(std::move(rng)) {}
  explicit RngHandle(std::uint64_t seed) : rng_(std::make_unique<SeededRng>(seed)) {}
  RngHandle(const RngHandle& other) : rng_(other.rng_ ? other.rng_->clone() : nullptr) {}
  RngHandle& operator=(const RngHandle& other) {
    if (this != &other) rng_ = other.rng_ ? other.rng_->clone() : nullptr;
    return *this;
  }
  RngHandle(RngHandle&&) noexcept = default;
  RngHandle& operator=(RngHandle&&) noexcept = default;

  Rng& operator*() const { return *rng_; }
  Rng* operator->() const { return rng_.get(); }
  explicit operator bool() const { return static_cast<bool>(rng_); }

 private:
  std::unique_ptr<Rng> rng_;
};

}  // namespace cnmzk
