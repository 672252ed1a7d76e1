#pragma once

// Boolean circuits with fan-in two.
//
// Wires are numbered 1..n+q: 1..n are inputs, n+1..n+q are gates, and n+q is
// the output. Gate w reads wires A(w) <= B(w) < w. A monotone Circuit uses
// only AND/OR; an ExtendedCircuit may also contain single-input NOT gates.
// Layered circuits have every gate at depth j read two wires of depth j-1
// (inputs have depth 1).

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace mlabe {

enum class GateType { And, Or, Not };

std::string_view gate_name(GateType t);

struct Gate {
  GateType type = GateType::And;
  int a = 0;  // first incoming wire A(w)
  int b = 0;  // second incoming wire B(w); equal to a for NOT

  bool operator==(const Gate&) const = default;
};

using Assignment = std::vector<bool>;

// Parses "1011" into {1,0,1,1}. Throws InvalidArgument on other characters.
Assignment parse_assignment(std::string_view bits);
std::string to_string(const Assignment& x);

class Circuit {
 public:
  Circuit() = default;
  // Gates for wires n+1, n+2, ... in order. Shape is checked by validate().
  Circuit(int inputs, std::vector<Gate> gates) : n_(inputs), gates_(std::move(gates)) {}

  int inputs() const { return n_; }
  int gate_count() const { return static_cast<int>(gates_.size()); }
  int wire_count() const { return n_ + gate_count(); }
  int output() const { return wire_count(); }
  bool is_input(int w) const { return w >= 1 && w <= n_; }
  bool is_gate(int w) const { return w > n_ && w <= wire_count(); }

  // Throws InvalidArgument when w is not a gate.
  const Gate& gate(int w) const;
  const std::vector<Gate>& gates() const { return gates_; }

  bool operator==(const Circuit&) const = default;

 private:
  int n_ = 0;
  std::vector<Gate> gates_;
};

// Same representation; NOT gates allowed.
class ExtendedCircuit {
 public:
  ExtendedCircuit() = default;
  ExtendedCircuit(int inputs, std::vector<Gate> gates) : n_(inputs), gates_(std::move(gates)) {}

  int inputs() const { return n_; }
  int gate_count() const { return static_cast<int>(gates_.size()); }
  int wire_count() const { return n_ + gate_count(); }
  int output() const { return wire_count(); }
  const Gate& gate(int w) const;
  const std::vector<Gate>& gates() const { return gates_; }

  bool operator==(const ExtendedCircuit&) const = default;

 private:
  int n_ = 0;
  std::vector<Gate> gates_;
};

enum class Rule {
  NoInputs,        // n must be positive
  NoGates,         // q must be positive
  GateTypeNotAllowed,
  WireOrder,       // w > B(w) >= A(w) >= 1
  Layering,        // depth(A(w)) = depth(B(w)) = depth(w) - 1
};

struct Violation {
  int wire = 0;
  Rule rule = Rule::WireOrder;
  std::string message;
};

std::string_view rule_name(Rule r);

// Checks wire ordering, gate types and layering. Never throws.
std::vector<Violation> validate(const Circuit& c);
// Wire ordering only; extended circuits need not be layered.
std::vector<Violation> validate(const ExtendedCircuit& c);

// depth(input) = 1, depth(gate) = 1 + max(depth(A), depth(B)). For layered
// circuits the two inputs agree. Requires correct wire ordering.
std::vector<int> depths(const Circuit& c);  // index w-1
int depth(const Circuit& c, int w);
int depth(const Circuit& c);

// NOT gates are transparent: depth(NOT(u)) = depth(u).
std::vector<int> depths(const ExtendedCircuit& c);
int depth(const ExtendedCircuit& c);

struct Evaluation {
  bool output = false;
  std::vector<bool> wires;  // f_w(x) at index w-1

  bool value(int w) const { return wires.at(static_cast<std::size_t>(w - 1)); }
};

// Throws InvalidArgument on |x| != n.
Evaluation evaluate(const Circuit& c, const Assignment& x);
Evaluation evaluate(const ExtendedCircuit& c, const Assignment& x);

// Monotone version of an extended circuit over 2n literal inputs: wire i is
// x_i and wire n+i is NOT x_i.
struct Monotonized {
  Circuit circuit;
  int original_inputs = 0;

  // (x_1..x_n, !x_1..!x_n)
  Assignment literals(const Assignment& x) const;
};

// Pushes negations down to the inputs by building each gate alongside its
// dual (AND <-> OR), then drops gates the output does not reach. The result
// has at most 2x the gates and the same depth as the input.
Monotonized demorganize(const ExtendedCircuit& c);

// Equivalent layered circuit whose output sits at exactly target_depth.
// Wires that must skip levels are carried through OR(w, w) pass-through gates.
// Gates the output does not depend on are dropped. Throws InvalidArgument when
// target_depth < depth(c) or c has ordering violations.
Circuit layer_and_pad(const Circuit& c, int target_depth);

// Text form:
//   circuit n=<int> q=<int>
//   gate <wire> <AND|OR|NOT> <in1> [<in2>]
// Blank lines and '#' comments are ignored. Parsing checks syntax and wire
// numbering; layering is left to validate(). Errors are ParseError with
// 1-based line and column.
std::variant<Circuit, ExtendedCircuit> parse(std::string_view text);
// As parse(), but NOT gates are a syntax error.
Circuit parse_circuit(std::string_view text);
// Accepts both forms.
ExtendedCircuit parse_extended(std::string_view text);

std::string render(const Circuit& c);
std::string render(const ExtendedCircuit& c);

}  // namespace mlabe
