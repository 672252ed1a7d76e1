#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include "mlabe/circuit.hpp"
#include "mlabe/errors.hpp"

namespace mlabe {

namespace {

// (original wire, depth at which its value is needed)
using Slot = std::pair<int, int>;

class Layerer {
 public:
  explicit Layerer(const Circuit& c) : c_(c), depth_(depths(c)) {}

  Circuit run(int target) {
    collect({c_.output(), target});
    // Number slots by depth, then by original wire; every slot only reads
    // slots one level down, so this order is topological and the output
    // (alone at the top level) comes last.
    std::vector<Slot> order(needed_.begin(), needed_.end());
    std::sort(order.begin(), order.end(), [](const Slot& x, const Slot& y) {
      return x.second != y.second ? x.second < y.second : x.first < y.first;
    });
    std::map<Slot, int> id;
    std::vector<Gate> gates;
    int next = c_.inputs() + 1;
    for (const Slot& s : order) {
      const auto [w, d] = s;
      if (d == 1) {
        id[s] = w;
        continue;
      }
      Gate g;
      if (d == depth_of(w)) {
        const Gate& orig = c_.gate(w);
        g = {orig.type, id.at({orig.a, d - 1}), id.at({orig.b, d - 1})};
      } else {
        const int below = id.at({w, d - 1});
        g = {GateType::Or, below, below};
      }
      if (g.a > g.b) std::swap(g.a, g.b);
      gates.push_back(g);
      id[s] = next++;
    }
    return Circuit(c_.inputs(), std::move(gates));
  }

 private:
  int depth_of(int w) const { return depth_[static_cast<std::size_t>(w - 1)]; }

  void collect(Slot s) {
    if (!needed_.insert(s).second) return;
    const auto [w, d] = s;
    if (d == 1) return;
    if (d > depth_of(w)) {
      collect({w, d - 1});
      return;
    }
    const Gate& g = c_.gate(w);
    collect({g.a, d - 1});
    collect({g.b, d - 1});
  }

  const Circuit& c_;
  std::vector<int> depth_;
  std::set<Slot> needed_;
};

}  // namespace

Circuit layer_and_pad(const Circuit& c, int target_depth) {
  for (const Violation& v : validate(c))
    if (v.rule != Rule::Layering) throw InvalidArgument("layer_and_pad: " + v.message);
  const int d = depth(c);
  if (target_depth < d)
    throw InvalidArgument("target depth " + std::to_string(target_depth) +
                          " is below the circuit depth " + std::to_string(d));
  return Layerer(c).run(target_depth);
}

}  // namespace mlabe
