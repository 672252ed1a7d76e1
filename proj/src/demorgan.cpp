#include <algorithm>

#include "mlabe/circuit.hpp"
#include "mlabe/errors.hpp"

namespace mlabe {

namespace {

// Node of the circuit being built: either a literal input or a gate.
struct Node {
  bool is_gate = false;
  int literal = 0;  // wire id in the literal numbering when !is_gate
  GateType type = GateType::And;
  int a = 0, b = 0;  // node indices
};

GateType dual(GateType t) { return t == GateType::And ? GateType::Or : GateType::And; }

}  // namespace

Monotonized demorganize(const ExtendedCircuit& c) {
  if (auto v = validate(c); !v.empty()) throw InvalidArgument("demorganize: " + v.front().message);
  const int n = c.inputs();

  std::vector<Node> nodes;
  // Literal nodes 0..2n-1 stand for wires 1..2n.
  for (int i = 1; i <= 2 * n; ++i) nodes.push_back({false, i, GateType::And, 0, 0});

  // For each original wire: node computing it, and node computing its negation.
  std::vector<int> pos(static_cast<std::size_t>(c.wire_count() + 1));
  std::vector<int> neg(static_cast<std::size_t>(c.wire_count() + 1));
  for (int i = 1; i <= n; ++i) {
    pos[static_cast<std::size_t>(i)] = i - 1;
    neg[static_cast<std::size_t>(i)] = n + i - 1;
  }
  for (int w = n + 1; w <= c.wire_count(); ++w) {
    const Gate& g = c.gate(w);
    const auto a = static_cast<std::size_t>(g.a);
    const auto b = static_cast<std::size_t>(g.b);
    const auto uw = static_cast<std::size_t>(w);
    if (g.type == GateType::Not) {
      pos[uw] = neg[a];
      neg[uw] = pos[a];
      continue;
    }
    nodes.push_back({true, 0, g.type, pos[a], pos[b]});
    pos[uw] = static_cast<int>(nodes.size()) - 1;
    nodes.push_back({true, 0, dual(g.type), neg[a], neg[b]});
    neg[uw] = static_cast<int>(nodes.size()) - 1;
  }

  int root = pos[static_cast<std::size_t>(c.output())];
  // A circuit that reduces to a bare literal still needs an output gate:
  // route it through OR(l, l). This is the one case where depth grows by one.
  if (!nodes[static_cast<std::size_t>(root)].is_gate) {
    nodes.push_back({true, 0, GateType::Or, root, root});
    root = static_cast<int>(nodes.size()) - 1;
  }

  // Keep only what the output reaches. Node indices are topological, so the
  // root is the last kept node.
  std::vector<bool> keep(nodes.size(), false);
  keep[static_cast<std::size_t>(root)] = true;
  for (int i = root; i >= 0; --i) {
    const Node& nd = nodes[static_cast<std::size_t>(i)];
    if (!keep[static_cast<std::size_t>(i)] || !nd.is_gate) continue;
    keep[static_cast<std::size_t>(nd.a)] = true;
    keep[static_cast<std::size_t>(nd.b)] = true;
  }

  std::vector<int> wire_of(nodes.size(), 0);
  for (int i = 0; i < 2 * n; ++i) wire_of[static_cast<std::size_t>(i)] = i + 1;
  std::vector<Gate> gates;
  int next = 2 * n + 1;
  for (std::size_t i = static_cast<std::size_t>(2 * n); i < nodes.size(); ++i) {
    if (!keep[i]) continue;
    const Node& nd = nodes[i];
    int wa = wire_of[static_cast<std::size_t>(nd.a)];
    int wb = wire_of[static_cast<std::size_t>(nd.b)];
    if (wa > wb) std::swap(wa, wb);
    gates.push_back({nd.type, wa, wb});
    wire_of[i] = next++;
  }
  return Monotonized{Circuit(2 * n, std::move(gates)), n};
}

}  // namespace mlabe
