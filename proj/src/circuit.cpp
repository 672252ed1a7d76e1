#include "mlabe/circuit.hpp"

#include <algorithm>

#include "mlabe/errors.hpp"

namespace mlabe {

std::string_view gate_name(GateType t) {
  switch (t) {
    case GateType::And: return "AND";
    case GateType::Or: return "OR";
    case GateType::Not: return "NOT";
  }
  return "?";
}

std::string_view rule_name(Rule r) {
  switch (r) {
    case Rule::NoInputs: return "no-inputs";
    case Rule::NoGates: return "no-gates";
    case Rule::GateTypeNotAllowed: return "gate-type";
    case Rule::WireOrder: return "wire-order";
    case Rule::Layering: return "layering";
  }
  return "?";
}

Assignment parse_assignment(std::string_view bits) {
  Assignment x;
  x.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') throw InvalidArgument("input must be a string of 0/1 characters");
    x.push_back(c == '1');
  }
  return x;
}

std::string to_string(const Assignment& x) {
  std::string s;
  s.reserve(x.size());
  for (bool b : x) s.push_back(b ? '1' : '0');
  return s;
}

namespace {

template <class C>
const Gate& gate_at(const C& c, int w) {
  if (w <= c.inputs() || w > c.wire_count())
    throw InvalidArgument("wire " + std::to_string(w) + " is not a gate");
  return c.gates()[static_cast<std::size_t>(w - c.inputs() - 1)];
}

bool ordered(const Gate& g, int w) {
  if (g.type == GateType::Not) return g.a >= 1 && g.a < w && g.b == g.a;
  return g.a >= 1 && g.b >= g.a && g.b < w;
}

template <class C>
void check_ordering(const C& c, std::vector<Violation>& out) {
  if (c.inputs() < 1) out.push_back({0, Rule::NoInputs, "circuit needs at least one input"});
  if (c.gate_count() < 1) out.push_back({0, Rule::NoGates, "circuit needs at least one gate"});
  for (int w = c.inputs() + 1; w <= c.wire_count(); ++w) {
    const Gate& g = gate_at(c, w);
    if (!ordered(g, w)) {
      std::string msg = "gate " + std::to_string(w) + " reads (" + std::to_string(g.a) + ", " +
                        std::to_string(g.b) + "); need " +
                        (g.type == GateType::Not ? "w > A(w) >= 1" : "w > B(w) >= A(w) >= 1");
      out.push_back({w, Rule::WireOrder, std::move(msg)});
    }
  }
}

template <class C>
void require_ordering(const C& c) {
  for (int w = c.inputs() + 1; w <= c.wire_count(); ++w)
    if (!ordered(gate_at(c, w), w))
      throw InvalidArgument("gate " + std::to_string(w) + " violates wire ordering");
}

}  // namespace

const Gate& Circuit::gate(int w) const { return gate_at(*this, w); }
const Gate& ExtendedCircuit::gate(int w) const { return gate_at(*this, w); }

std::vector<Violation> validate(const Circuit& c) {
  std::vector<Violation> out;
  check_ordering(c, out);
  // Depths only where both readers are well ordered; 0 marks "unknown".
  std::vector<int> d(static_cast<std::size_t>(std::max(c.wire_count(), 0)), 0);
  for (int w = 1; w <= c.inputs(); ++w) d[static_cast<std::size_t>(w - 1)] = 1;
  for (int w = c.inputs() + 1; w <= c.wire_count(); ++w) {
    const Gate& g = c.gate(w);
    if (g.type == GateType::Not) {
      out.push_back({w, Rule::GateTypeNotAllowed, "gate " + std::to_string(w) +
                                                      " is NOT; monotone circuits allow AND/OR only"});
      continue;
    }
    if (!ordered(g, w)) continue;
    const int da = d[static_cast<std::size_t>(g.a - 1)];
    const int db = d[static_cast<std::size_t>(g.b - 1)];
    if (da == 0 || db == 0) continue;
    d[static_cast<std::size_t>(w - 1)] = 1 + std::max(da, db);
    if (da != db)
      out.push_back({w, Rule::Layering,
                     "gate " + std::to_string(w) + " reads wire " + std::to_string(g.a) +
                         " at depth " + std::to_string(da) + " and wire " + std::to_string(g.b) +
                         " at depth " + std::to_string(db)});
  }
  return out;
}

std::vector<Violation> validate(const ExtendedCircuit& c) {
  std::vector<Violation> out;
  check_ordering(c, out);
  return out;
}

std::vector<int> depths(const Circuit& c) {
  require_ordering(c);
  std::vector<int> d(static_cast<std::size_t>(c.wire_count()), 1);
  for (int w = c.inputs() + 1; w <= c.wire_count(); ++w) {
    const Gate& g = c.gate(w);
    d[static_cast<std::size_t>(w - 1)] =
        1 + std::max(d[static_cast<std::size_t>(g.a - 1)], d[static_cast<std::size_t>(g.b - 1)]);
  }
  return d;
}

int depth(const Circuit& c, int w) {
  if (w < 1 || w > c.wire_count()) throw InvalidArgument("unknown wire " + std::to_string(w));
  return depths(c)[static_cast<std::size_t>(w - 1)];
}

int depth(const Circuit& c) { return depth(c, c.output()); }

std::vector<int> depths(const ExtendedCircuit& c) {
  require_ordering(c);
  std::vector<int> d(static_cast<std::size_t>(c.wire_count()), 1);
  for (int w = c.inputs() + 1; w <= c.wire_count(); ++w) {
    const Gate& g = c.gate(w);
    const int da = d[static_cast<std::size_t>(g.a - 1)];
    d[static_cast<std::size_t>(w - 1)] =
        g.type == GateType::Not ? da : 1 + std::max(da, d[static_cast<std::size_t>(g.b - 1)]);
  }
  return d;
}

int depth(const ExtendedCircuit& c) {
  if (c.wire_count() < 1) throw InvalidArgument("empty circuit");
  return depths(c).back();
}

namespace {

template <class C>
Evaluation evaluate_any(const C& c, const Assignment& x) {
  if (static_cast<int>(x.size()) != c.inputs())
    throw InvalidArgument("input has length " + std::to_string(x.size()) + ", circuit expects " +
                          std::to_string(c.inputs()));
  require_ordering(c);
  Evaluation ev;
  ev.wires.assign(x.begin(), x.end());
  ev.wires.resize(static_cast<std::size_t>(c.wire_count()));
  for (int w = c.inputs() + 1; w <= c.wire_count(); ++w) {
    const Gate& g = c.gate(w);
    const bool va = ev.value(g.a);
    const bool vb = ev.value(g.b);
    bool v = false;
    switch (g.type) {
      case GateType::And: v = va && vb; break;
      case GateType::Or: v = va || vb; break;
      case GateType::Not: v = !va; break;
    }
    ev.wires[static_cast<std::size_t>(w - 1)] = v;
  }
  ev.output = ev.wires.empty() ? false : ev.wires.back();
  return ev;
}

}  // namespace

Evaluation evaluate(const Circuit& c, const Assignment& x) { return evaluate_any(c, x); }
Evaluation evaluate(const ExtendedCircuit& c, const Assignment& x) { return evaluate_any(c, x); }

Assignment Monotonized::literals(const Assignment& x) const {
  if (static_cast<int>(x.size()) != original_inputs)
    throw InvalidArgument("input length does not match the original circuit");
  Assignment out(x);
  for (bool b : x) out.push_back(!b);
  return out;
}

}  // namespace mlabe
