#include "gen.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace mlabe::test {

Circuit random_layered(Rng& rng, int n, int depth, int max_gates) {
  // Widths for gate layers 2..depth; the top layer is the single output.
  std::vector<int> width(static_cast<std::size_t>(depth + 1), 0);
  width[1] = n;
  int budget = max_gates - 1;
  for (int j = 2; j < depth; ++j) {
    const int left = budget - (depth - 1 - j);  // keep one gate for each remaining layer
    width[static_cast<std::size_t>(j)] = rng.uniform_int(1, std::max(1, std::min(8, left)));
    budget -= width[static_cast<std::size_t>(j)];
  }
  if (depth >= 2) width[static_cast<std::size_t>(depth)] = 1;

  std::vector<Gate> gates;
  int first = 1;  // first wire of the previous layer
  int next = n + 1;
  for (int j = 2; j <= depth; ++j) {
    const int prev = width[static_cast<std::size_t>(j - 1)];
    for (int i = 0; i < width[static_cast<std::size_t>(j)]; ++i) {
      int a = first + rng.uniform_int(0, prev - 1);
      int b = first + rng.uniform_int(0, prev - 1);
      if (a > b) std::swap(a, b);
      gates.push_back({rng.coin() ? GateType::And : GateType::Or, a, b});
    }
    first = next;
    next += width[static_cast<std::size_t>(j)];
  }
  return Circuit(n, std::move(gates));
}

Circuit random_layered(Rng& rng, const LayeredShape& shape) {
  const int n = rng.uniform_int(1, shape.max_inputs);
  const int depth = rng.uniform_int(2, shape.max_depth);
  return random_layered(rng, n, depth, shape.max_gates);
}

ExtendedCircuit random_extended(Rng& rng, int n, int max_gates) {
  const int q = rng.uniform_int(1, max_gates);
  std::vector<Gate> gates;
  for (int i = 0; i < q; ++i) {
    const int w = n + i + 1;
    const bool last = i == q - 1;
    const int roll = rng.uniform_int(0, 9);
    const GateType t = (!last && roll < 3) ? GateType::Not : (roll % 2 == 0 ? GateType::And : GateType::Or);
    int a = rng.uniform_int(1, w - 1);
    int b = t == GateType::Not ? a : rng.uniform_int(1, w - 1);
    if (a > b) std::swap(a, b);
    gates.push_back({t, a, b});
  }
  return ExtendedCircuit(n, std::move(gates));
}

Assignment random_assignment(Rng& rng, int n) {
  Assignment x(static_cast<std::size_t>(n));
  for (auto&& bit : x) bit = rng.coin();
  return x;
}

std::vector<Assignment> all_assignments(int n) {
  std::vector<Assignment> out;
  for (std::uint32_t m = 0; m < (1U << n); ++m) {
    Assignment x(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = ((m >> i) & 1U) != 0;
    out.push_back(std::move(x));
  }
  return out;
}

std::optional<Assignment> find_input(Rng& rng, const Circuit& f, bool want, int tries) {
  for (int t = 0; t < tries; ++t) {
    Assignment x = random_assignment(rng, f.inputs());
    if (recursive_eval(f.gates(), f.inputs(), x) == want) return x;
  }
  if (f.inputs() <= 12) {
    for (auto& x : all_assignments(f.inputs()))
      if (recursive_eval(f.gates(), f.inputs(), x) == want) return x;
  }
  return std::nullopt;
}

bool recursive_eval(const std::vector<Gate>& gates, int n, const Assignment& x) {
  std::map<int, bool> memo;
  std::function<bool(int)> value = [&](int w) -> bool {
    if (w <= n) return x.at(static_cast<std::size_t>(w - 1));
    if (auto it = memo.find(w); it != memo.end()) return it->second;
    const Gate& g = gates.at(static_cast<std::size_t>(w - n - 1));
    bool v = false;
    switch (g.type) {
      case GateType::And: v = value(g.a) && value(g.b); break;
      case GateType::Or: v = value(g.a) || value(g.b); break;
      case GateType::Not: v = !value(g.a); break;
    }
    memo[w] = v;
    return v;
  };
  return value(n + static_cast<int>(gates.size()));
}

bool miller_rabin(const mpz_class& n, int rounds, Rng& rng) {
  if (n < 2) return false;
  for (int small : {2, 3, 5, 7, 11, 13}) {
    if (n == small) return true;
    if (n % small == 0) return false;
  }
  mpz_class d = n - 1;
  unsigned r = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++r;
  }
  for (int i = 0; i < rounds; ++i) {
    const mpz_class a = 2 + rng.below(n - 3);
    mpz_class x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned j = 1; j < r && composite; ++j) {
      x = (x * x) % n;
      if (x == n - 1) composite = false;
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace mlabe::test
