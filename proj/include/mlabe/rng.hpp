#pragma once

#include <cstdint>
#include <random>

#include <gmpxx.h>

namespace mlabe {

// Deterministic randomness source. std::mt19937_64 has a fully specified
// output sequence, so a seed reproduces the same draws on every platform.
// Single-owner: not safe to share between threads.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Seeded from std::random_device.
  static Rng from_entropy();

  std::uint64_t next() { return engine_(); }

  // Uniform integer with exactly `bits` random low bits.
  mpz_class bits(unsigned bits);

  // Uniform in [0, bound) by rejection sampling. bound must be positive.
  mpz_class below(const mpz_class& bound);

  bool coin() { return (engine_() & 1U) != 0; }

  // Uniform in [lo, hi].
  int uniform_int(int lo, int hi);

 private:
  std::mt19937_64 engine_;
};

}  // namespace mlabe
