#include <gtest/gtest.h>

#include "mlabe/circuit.hpp"
#include "mlabe/errors.hpp"
#include "support/gen.hpp"

using namespace mlabe;

namespace {

Circuit c(int n, std::vector<Gate> g) { return Circuit(n, std::move(g)); }
constexpr auto AND = GateType::And;
constexpr auto OR = GateType::Or;
constexpr auto NOT = GateType::Not;

bool has_rule(const std::vector<Violation>& vs, Rule r, int wire) {
  for (const auto& v : vs)
    if (v.rule == r && v.wire == wire) return true;
  return false;
}

}  // namespace

TEST(Validate, Examples) {
  EXPECT_TRUE(validate(c(2, {{AND, 1, 2}})).empty());
  EXPECT_TRUE(has_rule(validate(c(2, {{AND, 1, 3}})), Rule::WireOrder, 3));
  const auto vs = validate(c(2, {{OR, 1, 2}, {AND, 1, 3}}));
  ASSERT_EQ(vs.size(), 1U);
  EXPECT_EQ(vs[0].rule, Rule::Layering);
  EXPECT_EQ(vs[0].wire, 4);
}

TEST(Validate, OtherRules) {
  EXPECT_EQ(validate(c(0, {{AND, 1, 1}})).front().rule, Rule::NoInputs);
  EXPECT_FALSE(validate(c(2, {})).empty());
  EXPECT_EQ(validate(c(2, {})).front().rule, Rule::NoGates);
  EXPECT_TRUE(has_rule(validate(c(2, {{NOT, 1, 1}})), Rule::GateTypeNotAllowed, 3));
  EXPECT_TRUE(has_rule(validate(c(2, {{AND, 2, 1}})), Rule::WireOrder, 3));
  EXPECT_TRUE(has_rule(validate(c(2, {{AND, 0, 1}})), Rule::WireOrder, 3));
  EXPECT_TRUE(validate(c(1, {{OR, 1, 1}})).empty());  // pass-through is legal
}

TEST(Validate, NeverThrowsOnGarbage) {
  Rng rng(1);
  for (int t = 0; t < 500; ++t) {
    const int n = rng.uniform_int(0, 4);
    std::vector<Gate> gates;
    for (int i = rng.uniform_int(0, 5); i > 0; --i)
      gates.push_back({static_cast<GateType>(rng.uniform_int(0, 2)), rng.uniform_int(-2, 12), rng.uniform_int(-2, 12)});
    EXPECT_NO_THROW(validate(Circuit(n, gates)));
    EXPECT_NO_THROW(validate(ExtendedCircuit(n, gates)));
  }
}

TEST(Depth, Examples) {
  const auto f = c(2, {{AND, 1, 2}});
  EXPECT_EQ(depth(f, 1), 1);
  EXPECT_EQ(depth(f, 3), 2);
  EXPECT_THROW(depth(f, 4), InvalidArgument);
  for (int d = 1; d <= 8; ++d) {
    std::vector<Gate> gates;
    for (int i = 0; i < d; ++i) gates.push_back({OR, i + 1, i + 1});
    EXPECT_EQ(depth(c(1, gates)), d + 1);
  }
}

TEST(Evaluate, TruthTables) {
  const auto f_and = c(2, {{AND, 1, 2}});
  EXPECT_TRUE(evaluate(f_and, {1, 1}).output);
  EXPECT_FALSE(evaluate(f_and, {1, 0}).output);
  EXPECT_FALSE(evaluate(c(2, {{OR, 1, 2}}), {0, 0}).output);
  EXPECT_THROW(evaluate(f_and, {1}), InvalidArgument);
  const auto e = evaluate(c(2, {{OR, 1, 2}, {AND, 3, 3}}), {0, 1});
  EXPECT_EQ(e.wires, (std::vector<bool>{0, 1, 1, 1}));
}

TEST(Evaluate, MatchesRecursiveEvaluatorExhaustively) {
  Rng rng(2);
  for (int t = 0; t < 30; ++t) {
    const auto f = test::random_layered(rng, 8, 4);
    ASSERT_TRUE(validate(f).empty());
    for (const auto& x : test::all_assignments(8))
      ASSERT_EQ(evaluate(f, x).output, test::recursive_eval(f.gates(), 8, x));
  }
  for (int t = 0; t < 30; ++t) {
    const auto g = test::random_extended(rng, 6);
    for (const auto& x : test::all_assignments(6))
      ASSERT_EQ(evaluate(g, x).output, test::recursive_eval(g.gates(), 6, x));
  }
}

TEST(Assignment, ParseAndPrint) {
  EXPECT_EQ(parse_assignment("1011"), (Assignment{1, 0, 1, 1}));
  EXPECT_EQ(to_string(Assignment{1, 0}), "10");
  EXPECT_THROW(parse_assignment("10a"), InvalidArgument);
}

TEST(Demorganize, SingleNegation) {
  // NOT(x1) over n=1; the output is the literal !x1 carried by OR(l, l).
  const auto m = demorganize(ExtendedCircuit(1, {{NOT, 1, 1}}));
  EXPECT_EQ(m.circuit.inputs(), 2);
  EXPECT_EQ(m.circuit.gates(), (std::vector<Gate>{{OR, 2, 2}}));
  EXPECT_TRUE(evaluate(m.circuit, m.literals({0})).output);
  EXPECT_FALSE(evaluate(m.circuit, m.literals({1})).output);
}

TEST(Demorganize, MonotoneInputUnchanged) {
  const ExtendedCircuit g(2, {{OR, 1, 2}, {AND, 1, 3}});
  const auto m = demorganize(g);
  EXPECT_EQ(m.circuit.gate_count(), 2);
  EXPECT_EQ(m.circuit.inputs(), 4);
  for (const auto& x : test::all_assignments(2))
    EXPECT_EQ(evaluate(m.circuit, m.literals(x)).output, evaluate(g, x).output);
}

TEST(Demorganize, NotOfAnd) {
  const auto m = demorganize(ExtendedCircuit(2, {{AND, 1, 2}, {NOT, 3, 3}}));
  EXPECT_EQ(m.circuit.gates(), (std::vector<Gate>{{OR, 3, 4}}));
  for (const auto& x : test::all_assignments(2))
    EXPECT_EQ(evaluate(m.circuit, m.literals(x)).output, !(x[0] && x[1]));
}

TEST(Demorganize, RandomExhaustive) {
  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    const int n = rng.uniform_int(1, 8);
    const auto g = test::random_extended(rng, n);
    const auto m = demorganize(g);
    for (const Gate& gate : m.circuit.gates()) ASSERT_NE(gate.type, NOT);
    ASSERT_TRUE(validate(ExtendedCircuit(m.circuit.inputs(), m.circuit.gates())).empty());
    EXPECT_LE(m.circuit.gate_count(), 2 * g.gate_count());
    EXPECT_EQ(depth(m.circuit), depth(g));
    for (const auto& x : test::all_assignments(n))
      ASSERT_EQ(evaluate(m.circuit, m.literals(x)).output, test::recursive_eval(g.gates(), n, x));
  }
}

TEST(Demorganize, OutputIsMonotoneInLiterals) {
  Rng rng(4);
  for (int t = 0; t < 50; ++t) {
    const auto m = demorganize(test::random_extended(rng, 4)).circuit;
    for (const auto& lit : test::all_assignments(8)) {
      if (!evaluate(m, lit).output) continue;
      for (std::size_t i = 0; i < lit.size(); ++i) {
        if (lit[i]) continue;
        auto up = lit;
        up[i] = true;
        ASSERT_TRUE(evaluate(m, up).output);
      }
    }
  }
}

TEST(LayerAndPad, SingleAndToDepthThree) {
  const auto f = layer_and_pad(c(2, {{AND, 1, 2}}), 3);
  EXPECT_EQ(f.gates(), (std::vector<Gate>{{AND, 1, 2}, {OR, 3, 3}}));
  EXPECT_TRUE(validate(f).empty());
  EXPECT_EQ(depth(f), 3);
  for (const auto& x : test::all_assignments(2)) EXPECT_EQ(evaluate(f, x).output, x[0] && x[1]);
}

TEST(LayerAndPad, IdempotentOnLayered) {
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    const auto f = test::random_layered(rng, 5, 4);
    const auto g = layer_and_pad(f, 4);
    // Dead gates are dropped; gates the output uses are kept one-for-one.
    const auto again = layer_and_pad(g, 4);
    EXPECT_EQ(again, g);
    EXPECT_LE(g.gate_count(), f.gate_count());
  }
  const auto tight = c(2, {{AND, 1, 2}, {OR, 1, 2}, {AND, 3, 4}});
  EXPECT_EQ(layer_and_pad(tight, 3).gate_count(), 3);
}

TEST(LayerAndPad, Errors) {
  EXPECT_THROW(layer_and_pad(c(2, {{AND, 1, 2}, {OR, 3, 3}}), 2), InvalidArgument);
  EXPECT_THROW(layer_and_pad(c(2, {{AND, 2, 1}}), 3), InvalidArgument);
}

TEST(LayerAndPad, UnlayeredRandomExhaustive) {
  Rng rng(6);
  for (int t = 0; t < 100; ++t) {
    const int n = rng.uniform_int(1, 8);
    // Monotone but unlayered: drop NOTs from a random extended circuit.
    auto g = test::random_extended(rng, n);
    std::vector<Gate> gates = g.gates();
    for (Gate& x : gates)
      if (x.type == NOT) x.type = OR;
    const Circuit f(n, gates);
    const int target = depth(f) + rng.uniform_int(0, 3);
    const auto l = layer_and_pad(f, target);
    ASSERT_TRUE(validate(l).empty());
    ASSERT_EQ(depth(l), target);
    for (const auto& x : test::all_assignments(n))
      ASSERT_EQ(evaluate(l, x).output, test::recursive_eval(gates, n, x));
  }
}

TEST(Parse, MinimalAnd) {
  const auto parsed = parse("circuit n=2 q=1\ngate 3 AND 1 2\n");
  ASSERT_TRUE(std::holds_alternative<Circuit>(parsed));
  EXPECT_EQ(std::get<Circuit>(parsed), c(2, {{AND, 1, 2}}));
}

TEST(Parse, ErrorsCarryPosition) {
  try {
    parse("circuit n=2 q=1\ngate 3 XOR 1 2\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2U);
    EXPECT_EQ(e.column(), 8U);
  }
  try {
    parse("# header next\n\ncircuit n=2 q=2\ngate 3 AND 1 2\ngate 5 OR 1 3\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 5U);
    EXPECT_EQ(e.column(), 6U);
  }
  EXPECT_THROW(parse("circuit n=2 q=2\ngate 3 AND 1 2\n"), ParseError);
  EXPECT_THROW(parse("circuit n=2\n"), ParseError);
  EXPECT_THROW(parse("gate 3 AND 1 2\n"), ParseError);
  EXPECT_THROW(parse("circuit n=2 q=1\ngate 3 AND 1 9\n"), ParseError);
  EXPECT_THROW(parse("circuit n=2 q=1\ngate 3 NOT 1 2\n"), ParseError);
  EXPECT_THROW(parse(""), ParseError);
  try {
    parse_circuit("circuit n=1 q=2\ngate 2 OR 1 1\ngate 3 NOT 2\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3U);
    EXPECT_EQ(e.column(), 8U);
  }
}

TEST(Parse, CommentsAndOrderingLeftToValidate) {
  const auto f = parse_circuit("circuit n=2 q=1  # header\n\n  gate 3 AND 2 1 # swapped\n");
  EXPECT_EQ(f, c(2, {{AND, 2, 1}}));
  EXPECT_FALSE(validate(f).empty());
}

TEST(Render, RoundTripRandom) {
  Rng rng(7);
  for (int t = 0; t < 200; ++t) {
    const auto f = test::random_layered(rng);
    const std::string text = render(f);
    EXPECT_EQ(parse_circuit(text), f);
    EXPECT_EQ(render(parse_circuit(text)), text);
    const auto g = test::random_extended(rng, rng.uniform_int(1, 6));
    EXPECT_EQ(render(parse_extended(render(g))), render(g));
  }
  EXPECT_EQ(render(ExtendedCircuit(1, {{NOT, 1, 1}})), "circuit n=1 q=1\ngate 2 NOT 1\n");
}
