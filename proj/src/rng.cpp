#include "mlabe/rng.hpp"

#include <stdexcept>
#include <vector>

namespace mlabe {

Rng Rng::from_entropy() {
  std::random_device rd;
  const std::uint64_t seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  return Rng(seed);
}

mpz_class Rng::bits(unsigned bits) {
  if (bits == 0) return 0;
  const std::size_t words = (bits + 63) / 64;
  std::vector<std::uint64_t> buf(words);
  for (auto& w : buf) w = engine_();
  const unsigned extra = static_cast<unsigned>(words * 64 - bits);
  if (extra != 0) buf.back() >>= extra;
  mpz_class out;
  // Least-significant word first, native endianness within each word.
  mpz_import(out.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, buf.data());
  return out;
}

mpz_class Rng::below(const mpz_class& bound) {
  if (bound <= 0) throw std::invalid_argument("Rng::below: bound must be positive");
  if (bound == 1) return 0;
  const mpz_class top = bound - 1;
  const auto nbits = static_cast<unsigned>(mpz_sizeinbase(top.get_mpz_t(), 2));
  for (;;) {
    mpz_class candidate = bits(nbits);
    if (candidate < bound) return candidate;
  }
}

int Rng::uniform_int(int lo, int hi) {
  if (hi < lo) throw std::invalid_argument("Rng::uniform_int: empty range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  for (;;) {
    const std::uint64_t v = engine_();
    if (v < limit) return lo + static_cast<int>(v % span);
  }
}

}  // namespace mlabe
