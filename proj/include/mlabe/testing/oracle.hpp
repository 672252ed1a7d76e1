#pragma once

// Exponent oracle for the reference backend. Linked only into test code and
// the reduction checkers (target mlabe_testing); scheme code never sees it.

#include "mlabe/mlmap.hpp"

namespace mlabe::testing {

class ExponentOracle {
 public:
  explicit ExponentOracle(GroupDescriptor gd) : gd_(std::move(gd)) {}

  // a such that x = g_level^a.
  Scalar exponent(const LevelledElement& x) const;

 private:
  GroupDescriptor gd_;
};

// Backends without exposed exponents have no oracle.
template <class Element>
Scalar oracle_exponent(const GroupDescriptor&, const Element&) {
  throw Unsupported("exponent oracle is only available on the reference backend");
}

inline Scalar oracle_exponent(const GroupDescriptor& gd, const LevelledElement& x) {
  return ExponentOracle(gd).exponent(x);
}

}  // namespace mlabe::testing
