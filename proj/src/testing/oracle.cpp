#include "mlabe/testing/oracle.hpp"

namespace mlabe::testing {

Scalar ExponentOracle::exponent(const LevelledElement& x) const {
  return Scalar(gd_, x.exponent_);
}

}  // namespace mlabe::testing
