#include "mlabe/kpabe.hpp"

namespace mlabe::kpabe {

void check_policy(const Circuit& f, int inputs, int depth) {
  if (const auto violations = validate(f); !violations.empty()) {
    std::string msg = "policy circuit is invalid:";
    for (const auto& v : violations) msg += "\n  [" + std::string(rule_name(v.rule)) + "] " + v.message;
    throw InvalidArgument(msg);
  }
  if (f.inputs() != inputs)
    throw InvalidArgument("policy circuit has n = " + std::to_string(f.inputs()) +
                          ", parameters have n = " + std::to_string(inputs));
  if (const int d = mlabe::depth(f); d != depth)
    throw InvalidArgument("policy circuit has depth " + std::to_string(d) +
                          ", parameters require depth " + std::to_string(depth) +
                          " (pad it with layer_and_pad)");
}

}  // namespace mlabe::kpabe
