#pragma once

// Leveled multilinear maps.
//
// A backend provides a sequence of prime-order groups G_1..G_k with canonical
// generators g_1..g_k and pairings e(G_i, G_j) -> G_{i+j} for i + j <= k.
// Scheme code is written against the MultilinearBackend concept below.
//
// ReferenceBackend represents g_i^a by the pair (i, a mod p). It is exactly
// correct and completely insecure: the discrete log of every element is
// sitting in memory. It exists to check the algebra, not to protect data.

#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "mlabe/errors.hpp"
#include "mlabe/rng.hpp"

namespace mlabe {

namespace testing {
class ExponentOracle;
}

// Production-profile prime size in bits.
inline constexpr unsigned kDefaultSecurityBits = 256;

class GroupDescriptor {
 public:
  // Uses `p` as given; throws InvalidArgument unless p is a prime >= 3 and
  // degree >= 1.
  GroupDescriptor(mpz_class p, int degree);

  // Samples a prime p > 2^security_bits. Deterministic given the rng state.
  static GroupDescriptor generate(unsigned security_bits, int degree, Rng& rng);

  const mpz_class& prime() const { return p_; }
  int degree() const { return k_; }

  bool operator==(const GroupDescriptor&) const = default;

 private:
  mpz_class p_;
  int k_;
};

// An exponent in Z_p. Construction checks the range; arithmetic goes through
// the free functions below, which need the modulus.
class Scalar {
 public:
  Scalar(const GroupDescriptor& gd, mpz_class value);

  static Scalar zero() { return Scalar(mpz_class(0)); }
  static Scalar one() { return Scalar(mpz_class(1)); }

  const mpz_class& value() const { return v_; }

  bool operator==(const Scalar&) const = default;

 private:
  explicit Scalar(mpz_class v) : v_(std::move(v)) {}
  friend Scalar reduce(const GroupDescriptor& gd, const mpz_class& v);

  mpz_class v_;
};

// Reduces any integer (possibly negative) into [0, p).
Scalar reduce(const GroupDescriptor& gd, const mpz_class& v);
Scalar add(const GroupDescriptor& gd, const Scalar& a, const Scalar& b);
Scalar sub(const GroupDescriptor& gd, const Scalar& a, const Scalar& b);
Scalar mul(const GroupDescriptor& gd, const Scalar& a, const Scalar& b);
Scalar neg(const GroupDescriptor& gd, const Scalar& a);
Scalar random_scalar(const GroupDescriptor& gd, Rng& rng);

// g_level^a in the reference representation.
class LevelledElement {
 public:
  int level() const { return level_; }

  bool operator==(const LevelledElement&) const = default;

 private:
  LevelledElement(int level, mpz_class exponent)
      : level_(level), exponent_(std::move(exponent)) {}

  friend class ReferenceBackend;
  friend class testing::ExponentOracle;
  friend std::string to_text(const LevelledElement& e);
  friend LevelledElement element_from_text(const GroupDescriptor& gd, std::string_view text);

  int level_;
  mpz_class exponent_;
};

// Requirements on a multilinear-map backend. Element ops follow the group
// law (mul/inv/pow) and the pairing; Exponent ops are ring arithmetic on the
// values that get encoded. sample(level) draws an exponent meant for a
// level-`level` component; sample_small() draws the encryption randomness s.
template <class B>
concept MultilinearBackend =
    requires(const B& b, const typename B::Element& e, const typename B::Exponent& x,
             const Scalar& plain, int level, Rng& rng) {
      typename B::Element;
      typename B::Exponent;
      { b.group() } -> std::same_as<const GroupDescriptor&>;
      { b.degree() } -> std::convertible_to<int>;
      { b.encode(x, level) } -> std::same_as<typename B::Element>;
      { b.generator(level) } -> std::same_as<typename B::Element>;
      { b.pair(e, e) } -> std::same_as<typename B::Element>;
      { b.mul(e, e) } -> std::same_as<typename B::Element>;
      { b.inv(e) } -> std::same_as<typename B::Element>;
      { b.pow(e, x) } -> std::same_as<typename B::Element>;
      { b.equal(e, e) } -> std::same_as<bool>;
      { b.level_of(e) } -> std::convertible_to<int>;
      { b.plus(x, x) } -> std::same_as<typename B::Exponent>;
      { b.minus(x, x) } -> std::same_as<typename B::Exponent>;
      { b.times(x, x) } -> std::same_as<typename B::Exponent>;
      { b.negate(x) } -> std::same_as<typename B::Exponent>;
      { b.sample(level, rng) } -> std::same_as<typename B::Exponent>;
      { b.sample_small(rng) } -> std::same_as<typename B::Exponent>;
      { b.random_element(level, rng) } -> std::same_as<typename B::Element>;
    };

class ReferenceBackend {
 public:
  using Element = LevelledElement;
  using Exponent = Scalar;

  explicit ReferenceBackend(GroupDescriptor gd) : gd_(std::move(gd)) {}

  const GroupDescriptor& group() const { return gd_; }
  int degree() const { return gd_.degree(); }

  // g_level^a. Throws InvalidArgument unless 1 <= level <= k.
  Element encode(const Scalar& a, int level) const;
  Element generator(int level) const { return encode(Scalar::one(), level); }
  Element identity(int level) const { return encode(Scalar::zero(), level); }

  // e(g_i^a, g_j^b) = g_{i+j}^{ab}; LevelOverflow when i + j > k.
  Element pair(const Element& x, const Element& y) const;
  // Group law within G_i; LevelMismatch across levels.
  Element mul(const Element& x, const Element& y) const;
  Element inv(const Element& x) const;
  Element pow(const Element& x, const Scalar& a) const;

  bool equal(const Element& x, const Element& y) const { return x == y; }
  int level_of(const Element& x) const { return x.level(); }

  Scalar plus(const Scalar& a, const Scalar& b) const { return add(gd_, a, b); }
  Scalar minus(const Scalar& a, const Scalar& b) const { return sub(gd_, a, b); }
  Scalar times(const Scalar& a, const Scalar& b) const { return mlabe::mul(gd_, a, b); }
  Scalar negate(const Scalar& a) const { return neg(gd_, a); }

  // Uniform over Z_p; the level hint only matters to size-tracking backends.
  Scalar sample(int /*level*/, Rng& rng) const { return random_scalar(gd_, rng); }
  Scalar sample_small(Rng& rng) const { return random_scalar(gd_, rng); }
  Element random_element(int level, Rng& rng) const {
    return encode(sample(level, rng), level);
  }

 private:
  void check_level(int level) const;

  GroupDescriptor gd_;
};

static_assert(MultilinearBackend<ReferenceBackend>);

// Text forms: "GROUP p=<dec> k=<dec>" and "L<level>:<dec exponent>".
std::string to_text(const GroupDescriptor& gd);
GroupDescriptor group_from_text(std::string_view line);
std::string to_text(const LevelledElement& e);
LevelledElement element_from_text(const GroupDescriptor& gd, std::string_view text);

}  // namespace mlabe
