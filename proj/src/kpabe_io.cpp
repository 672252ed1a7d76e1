#include "mlabe/kpabe_io.hpp"

#include <type_traits>

namespace mlabe::kpabe {

namespace {

std::string entry(const std::string& name, const LevelledElement& e) {
  return name + "=" + mlabe::to_text(e) + "\n";
}

// Sequential reader over '\n'-terminated lines.
class Lines {
 public:
  explicit Lines(std::string_view text) : text_(text) {}

  bool done() const { return pos_ >= text_.size(); }

  std::string_view next() {
    if (done()) throw FormatError("unexpected end of input after line " + std::to_string(line_));
    const auto end = text_.find('\n', pos_);
    if (end == std::string_view::npos) throw FormatError("last line is not newline-terminated");
    std::string_view out = text_.substr(pos_, end - pos_);
    pos_ = end + 1;
    ++line_;
    return out;
  }

  void expect(std::string_view want) {
    const auto got = next();
    if (got != want)
      throw FormatError("line " + std::to_string(line_) + ": expected '" + std::string(want) + "'");
  }

  // "<name>=<value>" with the given name.
  std::string_view value(std::string_view name) {
    const auto got = next();
    if (got.size() <= name.size() || got.substr(0, name.size()) != name || got[name.size()] != '=')
      throw FormatError("line " + std::to_string(line_) + ": expected '" + std::string(name) + "=...'");
    return got.substr(name.size() + 1);
  }

  std::size_t line() const { return line_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 0;
};

LevelledElement element_at(const GroupDescriptor& gd, std::string_view text, int level, std::string_view name) {
  LevelledElement e = element_from_text(gd, text);
  if (e.level() != level)
    throw FormatError(std::string(name) + " must be at level " + std::to_string(level));
  return e;
}

template <class T>
T canonical(std::string_view text, T parsed) {
  if (to_text(parsed) != text) throw FormatError("input is not in canonical form");
  return parsed;
}

}  // namespace

std::string to_text(const RefPublicParams& pp) {
  std::string out = "PP v1\n" + mlabe::to_text(pp.group) + "\n" + entry("H", pp.H);
  for (std::size_t i = 0; i < pp.h.size(); ++i) out += entry("h" + std::to_string(i + 1), pp.h[i]);
  return out;
}

std::string to_text(const RefMasterSecret& msk) {
  return "MSK v1\n" + mlabe::to_text(msk.group) + "\n" + entry("K", msk.K);
}

std::string to_text(const RefCiphertext& ct) {
  std::string out = "CT v1\n" + mlabe::to_text(ct.group) + "\nx=" + mlabe::to_string(ct.x) + "\n";
  out += entry("CM", ct.C_M) + entry("Cs", ct.C_s);
  for (const auto& [i, c] : ct.C) out += entry("C" + std::to_string(i), c);
  return out;
}

std::string to_text(const RefSecretKey& sk) {
  std::string out = "SK v1\n" + mlabe::to_text(sk.group) + "\n```circuit\n" + render(sk.f) + "```\n";
  out += entry("KH", sk.K_H);
  for (std::size_t i = 0; i < sk.wires.size(); ++i) {
    const std::string w = "w" + std::to_string(i + 1) + ".";
    std::visit([&](const auto& k) {
      using K = std::decay_t<decltype(k)>;
      out += entry(w + "K1", k.K1) + entry(w + "K2", k.K2);
      if constexpr (!std::is_same_v<K, InputKey<ReferenceBackend>>) out += entry(w + "K3", k.K3);
      if constexpr (std::is_same_v<K, OrKey<ReferenceBackend>>) out += entry(w + "K4", k.K4);
    }, sk.wires[i]);
  }
  return out;
}

RefPublicParams public_params_from_text(std::string_view text) {
  Lines in(text);
  in.expect("PP v1");
  const GroupDescriptor gd = group_from_text(in.next());
  const int k = gd.degree();
  if (k < 2) throw FormatError("public parameters need a group of degree at least 2");
  LevelledElement H = element_at(gd, in.value("H"), k, "H");
  std::vector<LevelledElement> h;
  while (!in.done()) {
    const std::string name = "h" + std::to_string(h.size() + 1);
    h.push_back(element_at(gd, in.value(name), 1, name));
  }
  if (h.empty()) throw FormatError("public parameters need at least one h_i");
  const int n = static_cast<int>(h.size());
  return canonical(text, RefPublicParams{gd, n, k - 1, std::move(H), std::move(h)});
}

RefMasterSecret master_secret_from_text(std::string_view text) {
  Lines in(text);
  in.expect("MSK v1");
  const GroupDescriptor gd = group_from_text(in.next());
  if (gd.degree() < 2) throw FormatError("master secret needs a group of degree at least 2");
  LevelledElement K = element_at(gd, in.value("K"), gd.degree() - 1, "K");
  if (!in.done()) throw FormatError("trailing data after K");
  return canonical(text, RefMasterSecret{gd, std::move(K)});
}

RefCiphertext ciphertext_from_text(std::string_view text) {
  Lines in(text);
  in.expect("CT v1");
  const GroupDescriptor gd = group_from_text(in.next());
  Assignment x;
  try {
    x = parse_assignment(in.value("x"));
  } catch (const InvalidArgument& e) {
    throw FormatError(e.what());
  }
  if (x.empty()) throw FormatError("ciphertext input is empty");
  LevelledElement CM = element_at(gd, in.value("CM"), gd.degree(), "CM");
  LevelledElement Cs = element_at(gd, in.value("Cs"), 1, "Cs");
  std::map<int, LevelledElement> C;
  for (std::size_t i = 1; i <= x.size(); ++i) {
    if (!x[i - 1]) continue;
    const std::string name = "C" + std::to_string(i);
    C.emplace(static_cast<int>(i), element_at(gd, in.value(name), 1, name));
  }
  if (!in.done()) throw FormatError("trailing data after ciphertext components");
  return canonical(text, RefCiphertext{gd, std::move(x), std::move(CM), std::move(Cs), std::move(C)});
}

RefSecretKey secret_key_from_text(std::string_view text) {
  Lines in(text);
  in.expect("SK v1");
  const GroupDescriptor gd = group_from_text(in.next());
  const int k = gd.degree();
  if (k < 2) throw FormatError("secret key needs a group of degree at least 2");
  in.expect("```circuit");
  std::string circuit_text;
  for (;;) {
    const auto line = in.next();
    if (line == "```") break;
    circuit_text.append(line).push_back('\n');
  }
  Circuit f;
  try {
    f = parse_circuit(circuit_text);
  } catch (const ParseError& e) {
    throw FormatError(std::string("embedded circuit: ") + e.what());
  }
  const auto violations = validate(f);
  if (!violations.empty()) throw FormatError("embedded circuit: " + violations.front().message);
  const auto d = depths(f);
  if (d.back() != k - 1) throw FormatError("embedded circuit depth does not match the group degree");

  LevelledElement KH = element_at(gd, in.value("KH"), k - 1, "KH");
  std::vector<WireKey<ReferenceBackend>> wires;
  for (int w = 1; w <= f.wire_count(); ++w) {
    const std::string p = "w" + std::to_string(w) + ".";
    auto K1 = element_at(gd, in.value(p + "K1"), 1, p + "K1");
    auto K2 = element_at(gd, in.value(p + "K2"), 1, p + "K2");
    if (f.is_input(w)) {
      wires.emplace_back(InputKey<ReferenceBackend>{std::move(K1), std::move(K2)});
      continue;
    }
    const int j = d[static_cast<std::size_t>(w - 1)];
    auto K3 = element_at(gd, in.value(p + "K3"), j, p + "K3");
    if (f.gate(w).type == GateType::Or) {
      auto K4 = element_at(gd, in.value(p + "K4"), j, p + "K4");
      wires.emplace_back(OrKey<ReferenceBackend>{std::move(K1), std::move(K2), std::move(K3), std::move(K4)});
    } else {
      wires.emplace_back(AndKey<ReferenceBackend>{std::move(K1), std::move(K2), std::move(K3)});
    }
  }
  if (!in.done()) throw FormatError("trailing data after key components");
  return canonical(text, RefSecretKey{gd, std::move(f), std::move(KH), std::move(wires)});
}

}  // namespace mlabe::kpabe
