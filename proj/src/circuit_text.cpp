#include <charconv>
#include <optional>

#include "mlabe/circuit.hpp"
#include "mlabe/errors.hpp"

namespace mlabe {

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> split(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ExtendedCircuit run() {
    std::optional<int> n, q;
    std::vector<Gate> gates;
    std::size_t line_no = 0;
    std::size_t last_line = 0;
    while (next_line()) {
      line_no = current_line_;
      auto toks = split(line_);
      if (toks.empty()) continue;
      last_line = line_no;
      if (!n) {
        header(toks, n, q);
        continue;
      }
      if (toks[0].text != "gate") fail(toks[0], "expected 'gate'");
      if (static_cast<int>(gates.size()) == *q)
        fail(toks[0], "more gate lines than q=" + std::to_string(*q));
      gates.push_back(gate(toks, *n + static_cast<int>(gates.size()) + 1, *n + *q));
    }
    if (!n) throw ParseError(line_no + 1, 1, "missing 'circuit n=<int> q=<int>' header");
    if (static_cast<int>(gates.size()) != *q)
      throw ParseError(last_line + 1, 1,
                       "expected " + std::to_string(*q) + " gate lines, found " +
                           std::to_string(gates.size()));
    return ExtendedCircuit(*n, std::move(gates));
  }

 private:
  bool next_line() {
    if (pos_ > text_.size()) return false;
    const std::size_t end = text_.find('\n', pos_);
    std::string_view raw = text_.substr(pos_, end == std::string_view::npos ? text_.size() - pos_ : end - pos_);
    pos_ = end == std::string_view::npos ? text_.size() + 1 : end + 1;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    line_ = raw;
    ++current_line_;
    return true;
  }

  [[noreturn]] void fail(const Token& t, const std::string& what) const {
    throw ParseError(current_line_, t.column, what);
  }

  int number(const Token& t, std::string_view what, int min) const {
    int v = 0;
    const char* b = t.text.data();
    const char* e = b + t.text.size();
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (t.text.empty() || ec != std::errc() || ptr != e)
      fail(t, "expected integer " + std::string(what) + ", got '" + std::string(t.text) + "'");
    if (v < min) fail(t, std::string(what) + " must be at least " + std::to_string(min));
    return v;
  }

  int keyed(const Token& t, std::string_view key, int min) const {
    if (t.text.substr(0, key.size()) != key)
      fail(t, "expected '" + std::string(key) + "<int>'");
    Token value{t.text.substr(key.size()), t.column + key.size()};
    return number(value, key.substr(0, key.size() - 1), min);
  }

  void header(const std::vector<Token>& toks, std::optional<int>& n, std::optional<int>& q) const {
    if (toks[0].text != "circuit") fail(toks[0], "expected 'circuit n=<int> q=<int>' header");
    if (toks.size() != 3) {
      const Token& at = toks.size() > 3 ? toks[3] : toks.back();
      fail(at, "header takes exactly n=<int> and q=<int>");
    }
    n = keyed(toks[1], "n=", 1);
    q = keyed(toks[2], "q=", 0);
  }

  Gate gate(const std::vector<Token>& toks, int expected_wire, int max_wire) const {
    if (toks.size() < 2) fail(toks[0], "gate line needs a wire number");
    const int w = number(toks[1], "wire", 1);
    if (w != expected_wire)
      fail(toks[1], "expected gate wire " + std::to_string(expected_wire) + " (ascending order)");
    if (toks.size() < 3) fail(toks[1], "gate line needs a type");
    GateType type;
    const Token& tt = toks[2];
    if (tt.text == "AND") type = GateType::And;
    else if (tt.text == "OR") type = GateType::Or;
    else if (tt.text == "NOT") type = GateType::Not;
    else fail(tt, "unknown gate type '" + std::string(tt.text) + "' (expected AND, OR or NOT)");
    const std::size_t arity = type == GateType::Not ? 1 : 2;
    if (toks.size() != 3 + arity) {
      const Token& at = toks.size() > 3 + arity ? toks[3 + arity] : toks.back();
      fail(at, std::string(gate_name(type)) + " takes " + std::to_string(arity) + " input wire(s)");
    }
    const int a = number(toks[3], "input wire", 1);
    const int b = arity == 2 ? number(toks[4], "input wire", 1) : a;
    if (a > max_wire) fail(toks[3], "wire " + std::to_string(a) + " does not exist");
    if (b > max_wire) fail(toks[4], "wire " + std::to_string(b) + " does not exist");
    return {type, a, b};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::string_view line_;
  std::size_t current_line_ = 0;
};

bool has_not(const ExtendedCircuit& c) {
  for (const Gate& g : c.gates())
    if (g.type == GateType::Not) return true;
  return false;
}

template <class C>
std::string render_any(const C& c) {
  std::string out = "circuit n=" + std::to_string(c.inputs()) + " q=" + std::to_string(c.gate_count()) + "\n";
  int w = c.inputs() + 1;
  for (const Gate& g : c.gates()) {
    out += "gate " + std::to_string(w++) + " " + std::string(gate_name(g.type)) + " " + std::to_string(g.a);
    if (g.type != GateType::Not) out += " " + std::to_string(g.b);
    out += "\n";
  }
  return out;
}

}  // namespace

std::variant<Circuit, ExtendedCircuit> parse(std::string_view text) {
  ExtendedCircuit c = Parser(text).run();
  if (has_not(c)) return c;
  return Circuit(c.inputs(), c.gates());
}

Circuit parse_circuit(std::string_view text) {
  auto parsed = parse(text);
  if (auto* c = std::get_if<Circuit>(&parsed)) return std::move(*c);
  // Report the first NOT gate.
  const auto& ext = std::get<ExtendedCircuit>(parsed);
  std::size_t line = 0, pos = 0;
  int gates_seen = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    ++line;
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    auto toks = split(raw);
    if (toks.empty() || toks[0].text != "gate") continue;
    if (ext.gates()[static_cast<std::size_t>(gates_seen++)].type == GateType::Not)
      throw ParseError(line, toks.size() > 2 ? toks[2].column : 1,
                       "NOT gates are not allowed in a monotone circuit");
  }
  throw ParseError(1, 1, "NOT gates are not allowed in a monotone circuit");
}

ExtendedCircuit parse_extended(std::string_view text) { return Parser(text).run(); }

std::string render(const Circuit& c) { return render_any(c); }
std::string render(const ExtendedCircuit& c) { return render_any(c); }

}  // namespace mlabe
