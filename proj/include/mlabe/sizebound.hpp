#pragma once

// Size-bound bookkeeping for graded encodings.
//
// In a graded-encoding instantiation every encoded value is a "short" ring
// element and each operation grows its size. This backend wraps the reference
// backend and carries, next to every exponent and element, an upper bound on
// log2 of its size plus the number of fresh factors it is a product of.
//
// Rules (all bounds are log2, kept as exact rationals):
//   fresh sample at level i       bound log f(i+1) + (i+1)k, factors i+1
//   fresh small sample (s etc.)   bound k, factors 1
//   product / pairing / pow       bound_x + bound_y + slack, factors add up,
//                                 slack = max(0, log f(mx+my) - log f(mx) - log f(my))
//   sum / group law               bound of |a| + |b|, rounded up to 1/1024
//   negation / inverse            unchanged
//
// With this slack an m-fold product of fresh size-2^k values ends at most at
// log f(m) + km, matching ||c_1...c_m|| < f(m) 2^{km}. Every element produced
// at level i must stay within level_budget(i) = log f(i+1) + (i+1)k, otherwise
// BudgetExceeded is thrown.

#include <cstdint>
#include <functional>
#include <map>

#include <boost/rational.hpp>

#include "mlabe/mlmap.hpp"

namespace mlabe {

using LogBound = boost::rational<std::int64_t>;

struct GrowthProfile {
  // Base size exponent: fresh values have size < 2^size_bits.
  int size_bits = 0;
  // m -> log2 f(m) for m >= 1; must be strictly increasing.
  std::function<LogBound(int)> log_f;

  // f(m) = 2^{m * ceil(log2(m + 1))}.
  static GrowthProfile standard(int size_bits);

  // log2 f(m), with log2 f(0) taken as 0 (the empty product).
  LogBound log_f_at(int m) const;

  // Throws InvalidArgument unless log_f is strictly increasing on [1, 2 * degree].
  void validate(int degree) const;
};

// log2 f(level + 1) + (level + 1) * size_bits.
LogBound level_budget(const GrowthProfile& profile, int level);

// Log form of A > B * 2^k: a_bound > b_bound + k.
bool check_hiding(LogBound a_bound, LogBound b_bound, const GrowthProfile& profile);

// Upper bound on log2(2^a + 2^b).
LogBound log_sum_bound(LogBound a, LogBound b);

struct BoundedScalar {
  Scalar value;
  LogBound log_bound;
  int factors = 0;
};

struct BoundedElement {
  LevelledElement inner;
  LogBound log_bound;
  int factors = 0;

  int level() const { return inner.level(); }
};

// Highest bound observed per level. Not thread-safe; give each thread its own.
class BudgetMeter {
 public:
  struct Entry {
    LogBound max_bound;
    LogBound budget;
  };

  void record(int level, LogBound bound, LogBound budget);
  const std::map<int, Entry>& entries() const { return entries_; }

 private:
  std::map<int, Entry> entries_;
};

class BoundedBackend {
 public:
  using Element = BoundedElement;
  using Exponent = BoundedScalar;

  BoundedBackend(GroupDescriptor gd, GrowthProfile profile, BudgetMeter* meter = nullptr);

  const GroupDescriptor& group() const { return inner_.group(); }
  int degree() const { return inner_.degree(); }
  const GrowthProfile& profile() const { return profile_; }
  const ReferenceBackend& inner() const { return inner_; }

  LogBound budget(int level) const { return level_budget(profile_, level); }

  Element encode(const Exponent& a, int level) const;
  Element generator(int level) const;
  Element pair(const Element& x, const Element& y) const;
  Element mul(const Element& x, const Element& y) const;
  Element inv(const Element& x) const;
  Element pow(const Element& x, const Exponent& a) const;

  bool equal(const Element& x, const Element& y) const { return x.inner == y.inner; }
  int level_of(const Element& x) const { return x.level(); }

  Exponent plus(const Exponent& a, const Exponent& b) const;
  Exponent minus(const Exponent& a, const Exponent& b) const;
  Exponent times(const Exponent& a, const Exponent& b) const;
  Exponent negate(const Exponent& a) const;

  // Exponent for a fresh level-`level` value: bound = level_budget(level).
  Exponent sample(int level, Rng& rng) const;
  // Exponent of size 2^k.
  Exponent sample_small(Rng& rng) const;
  Element random_element(int level, Rng& rng) const { return encode(sample(level, rng), level); }

  // Fresh element at `level` with bound level_budget(level).
  Element bounded_sample(int level, Rng& rng) const { return random_element(level, rng); }
  // Fresh level-1 element of size 2^k (the encryption randomness g^s).
  Element bounded_sample_s(Rng& rng) const { return encode(sample_small(rng), 1); }
  Element bounded_pair(const Element& x, const Element& y) const { return pair(x, y); }

  // Attaches a bound to an existing reference element, checked against the
  // level budget.
  Element wrap(const LevelledElement& e, LogBound bound, int factors) const;

 private:
  LogBound product_bound(LogBound bx, int mx, LogBound by, int my) const;
  Element checked(LevelledElement e, LogBound bound, int factors) const;

  ReferenceBackend inner_;
  GrowthProfile profile_;
  BudgetMeter* meter_;
};

static_assert(MultilinearBackend<BoundedBackend>);

}  // namespace mlabe
