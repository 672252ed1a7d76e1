#pragma once

// Key-policy ABE for layered monotone circuits over a leveled multilinear map.
//
// Setup(n, l) uses a group sequence of degree k = l + 1. A ciphertext for
// input x carries g^s and h_i^s for every i with x_i = 1; a key for circuit f
// carries one random r_w per wire. Decryption walks the satisfied wires
// bottom-up and derives E_w = g_{j+1}^{s r_w} for each wire w at depth j:
//
//   input  E_w = e(K1, g^s) * e(K2, h_w^s)
//   OR     E_w = e(E_A, K1) * e(K3, g^s)   or   e(E_B, K2) * e(K4, g^s)
//   AND    E_w = e(E_A, K1) * e(E_B, K2) * e(K3, g^s)
//
// Each step pairs a child's value one level up ("move forward") and then
// multiplies by a shift component to land on the parent's r_w. Pairings only
// increase the level, so a value at level j+1 never yields one at level j.
// The header e(K_H, g^s) = g_k^{(alpha - r_out) s} combined with E_out gives
// g_k^{alpha s}, which is compared with C_M.

#include <map>
#include <string>
#include <type_traits>
#include <optional>
#include <variant>
#include <vector>

#include "mlabe/circuit.hpp"
#include "mlabe/errors.hpp"
#include "mlabe/mlmap.hpp"
#include "mlabe/rng.hpp"

namespace mlabe::kpabe {

template <MultilinearBackend B>
struct PublicParams {
  using Element = typename B::Element;

  GroupDescriptor group;
  int inputs = 0;       // n
  int depth = 0;        // l; the group degree is l + 1
  Element H;            // g_k^alpha
  std::vector<Element> h;  // h_1..h_n, level 1

  bool operator==(const PublicParams&) const = default;
};

template <MultilinearBackend B>
struct MasterSecret {
  GroupDescriptor group;
  typename B::Element K;  // g_{k-1}^alpha

  bool operator==(const MasterSecret&) const = default;
};

template <MultilinearBackend B>
struct Ciphertext {
  using Element = typename B::Element;

  GroupDescriptor group;
  Assignment x;
  Element C_M;
  Element C_s;                 // g^s
  std::map<int, Element> C;    // i -> h_i^s for x_i = 1

  bool operator==(const Ciphertext&) const = default;
};

template <MultilinearBackend B>
struct InputKey {
  typename B::Element K1, K2;  // g^{r_w} h_w^{z_w}, g^{-z_w}

  bool operator==(const InputKey&) const = default;
};

template <MultilinearBackend B>
struct OrKey {
  typename B::Element K1, K2, K3, K4;

  bool operator==(const OrKey&) const = default;
};

template <MultilinearBackend B>
struct AndKey {
  typename B::Element K1, K2, K3;

  bool operator==(const AndKey&) const = default;
};

template <MultilinearBackend B>
using WireKey = std::variant<InputKey<B>, OrKey<B>, AndKey<B>>;

template <MultilinearBackend B>
struct SecretKey {
  GroupDescriptor group;
  Circuit f;
  typename B::Element K_H;         // g_{k-1}^{alpha - r_out}
  std::vector<WireKey<B>> wires;   // index w-1

  bool operator==(const SecretKey&) const = default;

  const WireKey<B>& wire(int w) const { return wires.at(static_cast<std::size_t>(w - 1)); }
};

template <MultilinearBackend B>
struct SetupOptions {
  std::optional<typename B::Exponent> alpha;  // test hook: force alpha
};

template <MultilinearBackend B>
struct EncryptOptions {
  std::optional<typename B::Exponent> s;  // test hook: force s
};

// Randomness drawn by keygen, recorded on request so tests can check the
// components against their defining equations.
template <MultilinearBackend B>
struct WireRandomness {
  typename B::Exponent r;
  std::optional<typename B::Exponent> z, a, b;
};

template <MultilinearBackend B>
using KeyTrace = std::vector<WireRandomness<B>>;

// Checks that f can be used with these parameters: no validation violations,
// n matches, and the output sits at depth l. Throws InvalidArgument.
void check_policy(const Circuit& f, int inputs, int depth);

template <MultilinearBackend B>
struct KeyPair {
  PublicParams<B> pp;
  MasterSecret<B> msk;
};

// Requires backend.degree() == depth + 1.
template <MultilinearBackend B>
KeyPair<B> setup(const B& backend, int inputs, int depth, Rng& rng, const SetupOptions<B>& opts = {}) {
  if (inputs < 1) throw InvalidArgument("setup: n must be at least 1");
  if (depth < 1) throw InvalidArgument("setup: depth must be at least 1");
  const int k = backend.degree();
  if (k != depth + 1)
    throw InvalidArgument("setup: depth " + std::to_string(depth) + " needs a degree-" +
                          std::to_string(depth + 1) + " group, got " + std::to_string(k));
  const auto alpha = opts.alpha ? *opts.alpha : backend.sample_small(rng);
  KeyPair<B> out{PublicParams<B>{backend.group(), inputs, depth, backend.encode(alpha, k), {}},
                 MasterSecret<B>{backend.group(), backend.encode(alpha, k - 1)}};
  out.pp.h.reserve(static_cast<std::size_t>(inputs));
  for (int i = 0; i < inputs; ++i) out.pp.h.push_back(backend.encode(backend.sample_small(rng), 1));
  return out;
}

template <MultilinearBackend B>
Ciphertext<B> encrypt(const B& backend, const PublicParams<B>& pp, const Assignment& x, bool message,
                      Rng& rng, const EncryptOptions<B>& opts = {}) {
  if (static_cast<int>(x.size()) != pp.inputs)
    throw InvalidArgument("encrypt: input has length " + std::to_string(x.size()) + ", expected " +
                          std::to_string(pp.inputs));
  const auto s = opts.s ? *opts.s : backend.sample_small(rng);
  auto C_s = backend.encode(s, 1);
  std::map<int, typename B::Element> C;
  for (int i = 1; i <= pp.inputs; ++i)
    if (x[static_cast<std::size_t>(i - 1)]) C.emplace(i, backend.pow(pp.h[static_cast<std::size_t>(i - 1)], s));
  auto C_M = message ? backend.pow(pp.H, s) : backend.random_element(backend.degree(), rng);
  return Ciphertext<B>{pp.group, x, std::move(C_M), std::move(C_s), std::move(C)};
}

namespace detail {

template <MultilinearBackend B>
InputKey<B> input_components(const B& backend, const typename B::Element& h_w,
                             const typename B::Exponent& r, const typename B::Exponent& z) {
  return {backend.mul(backend.encode(r, 1), backend.pow(h_w, z)), backend.encode(backend.negate(z), 1)};
}

template <MultilinearBackend B>
OrKey<B> or_components(const B& backend, int j, const typename B::Exponent& a,
                       const typename B::Exponent& b, const typename B::Exponent& r,
                       const typename B::Exponent& r_a, const typename B::Exponent& r_b) {
  return {backend.encode(a, 1), backend.encode(b, 1),
          backend.encode(backend.minus(r, backend.times(a, r_a)), j),
          backend.encode(backend.minus(r, backend.times(b, r_b)), j)};
}

template <MultilinearBackend B>
AndKey<B> and_components(const B& backend, int j, const typename B::Exponent& a,
                         const typename B::Exponent& b, const typename B::Exponent& r,
                         const typename B::Exponent& r_a, const typename B::Exponent& r_b) {
  const auto shift = backend.minus(backend.minus(r, backend.times(a, r_a)), backend.times(b, r_b));
  return {backend.encode(a, 1), backend.encode(b, 1), backend.encode(shift, j)};
}

}  // namespace detail

template <MultilinearBackend B>
SecretKey<B> keygen(const B& backend, const MasterSecret<B>& msk, const PublicParams<B>& pp,
                    const Circuit& f, Rng& rng, KeyTrace<B>* trace = nullptr) {
  check_policy(f, pp.inputs, pp.depth);
  const int k = backend.degree();
  const auto d = depths(f);
  const int wires = f.wire_count();

  std::vector<typename B::Exponent> r;
  r.reserve(static_cast<std::size_t>(wires));
  for (int w = 1; w <= wires; ++w) r.push_back(backend.sample_small(rng));
  const auto r_of = [&](int w) -> const typename B::Exponent& { return r[static_cast<std::size_t>(w - 1)]; };

  SecretKey<B> sk{pp.group, f, backend.mul(msk.K, backend.inv(backend.encode(r_of(f.output()), k - 1))), {}};
  sk.wires.reserve(static_cast<std::size_t>(wires));
  if (trace) trace->clear();

  for (int w = 1; w <= wires; ++w) {
    WireRandomness<B> rec{r_of(w), std::nullopt, std::nullopt, std::nullopt};
    if (f.is_input(w)) {
      const auto z = backend.sample_small(rng);
      sk.wires.emplace_back(detail::input_components(backend, pp.h[static_cast<std::size_t>(w - 1)], r_of(w), z));
      rec.z = z;
    } else {
      const Gate& g = f.gate(w);
      const int j = d[static_cast<std::size_t>(w - 1)];
      const auto a = backend.sample_small(rng);
      const auto b = backend.sample_small(rng);
      if (g.type == GateType::Or)
        sk.wires.emplace_back(detail::or_components(backend, j, a, b, r_of(w), r_of(g.a), r_of(g.b)));
      else
        sk.wires.emplace_back(detail::and_components(backend, j, a, b, r_of(w), r_of(g.a), r_of(g.b)));
      rec.a = a;
      rec.b = b;
    }
    if (trace) trace->push_back(std::move(rec));
  }
  return sk;
}

enum class Branch { A, B };

// Bottom-up evaluation of E_w over the satisfied wires, memoized.
template <MultilinearBackend B>
class Decryptor {
 public:
  using Element = typename B::Element;

  Decryptor(const B& backend, const SecretKey<B>& sk, const Ciphertext<B>& ct)
      : backend_(backend), sk_(sk), ct_(ct) {
    if (static_cast<int>(ct.x.size()) != sk.f.inputs())
      throw InvalidArgument("decrypt: ciphertext input length " + std::to_string(ct.x.size()) +
                            " does not match the key's n = " + std::to_string(sk.f.inputs()));
    if (static_cast<int>(sk.wires.size()) != sk.f.wire_count())
      throw InvalidArgument("decrypt: key has " + std::to_string(sk.wires.size()) +
                            " wire components for " + std::to_string(sk.f.wire_count()) + " wires");
    eval_ = evaluate(sk.f, ct.x);
    memo_.resize(static_cast<std::size_t>(sk.f.wire_count()));
  }

  bool satisfied(int w) const { return eval_.value(w); }

  // E_w = g_{depth(w)+1}^{s r_w}. Throws NotSatisfied when f_w(x) = 0.
  const Element& wire(int w) {
    auto& slot = memo_.at(static_cast<std::size_t>(w - 1));
    if (!slot) slot = compute(w, std::nullopt);
    return *slot;
  }

  // OR wire through a specific branch; that branch must be satisfied.
  Element or_via(int w, Branch branch) {
    if (!sk_.f.is_gate(w) || sk_.f.gate(w).type != GateType::Or)
      throw InvalidArgument("wire " + std::to_string(w) + " is not an OR gate");
    return compute(w, branch);
  }

  // e(K_H, g^s) = g_k^{alpha s - r_out s}
  Element header() const { return backend_.pair(sk_.K_H, ct_.C_s); }

  // 1 iff E' * E_out equals C_M. Throws NotSatisfied when f(x) = 0.
  bool decrypt() {
    if (!eval_.output) throw NotSatisfied("circuit does not accept the ciphertext input");
    const Element blinded = backend_.mul(header(), wire(sk_.f.output()));
    return backend_.equal(blinded, ct_.C_M);
  }

 private:
  Element compute(int w, std::optional<Branch> forced) {
    if (!satisfied(w)) throw NotSatisfied("wire " + std::to_string(w) + " is not satisfied");
    const WireKey<B>& key = sk_.wire(w);
    if (sk_.f.is_input(w)) {
      const auto* k = std::get_if<InputKey<B>>(&key);
      if (!k) throw InvalidArgument("key component for input wire " + std::to_string(w) + " has the wrong shape");
      const auto c = ct_.C.find(w);
      if (c == ct_.C.end()) throw InvalidArgument("ciphertext is missing C_" + std::to_string(w));
      return backend_.mul(backend_.pair(k->K1, ct_.C_s), backend_.pair(k->K2, c->second));
    }
    const Gate& g = sk_.f.gate(w);
    if (g.type == GateType::Or) {
      const auto* k = std::get_if<OrKey<B>>(&key);
      if (!k) throw InvalidArgument("key component for OR wire " + std::to_string(w) + " has the wrong shape");
      const Branch branch = forced ? *forced : (satisfied(g.a) ? Branch::A : Branch::B);
      if (branch == Branch::A)
        return backend_.mul(backend_.pair(wire(g.a), k->K1), backend_.pair(k->K3, ct_.C_s));
      return backend_.mul(backend_.pair(wire(g.b), k->K2), backend_.pair(k->K4, ct_.C_s));
    }
    const auto* k = std::get_if<AndKey<B>>(&key);
    if (!k) throw InvalidArgument("key component for AND wire " + std::to_string(w) + " has the wrong shape");
    const Element left = backend_.pair(wire(g.a), k->K1);
    const Element right = backend_.pair(wire(g.b), k->K2);
    return backend_.mul(backend_.mul(left, right), backend_.pair(k->K3, ct_.C_s));
  }

  const B& backend_;
  const SecretKey<B>& sk_;
  const Ciphertext<B>& ct_;
  Evaluation eval_;
  std::vector<std::optional<Element>> memo_;
};

template <MultilinearBackend B>
bool decrypt(const B& backend, const SecretKey<B>& sk, const Ciphertext<B>& ct) {
  return Decryptor<B>(backend, sk, ct).decrypt();
}

template <MultilinearBackend B>
typename B::Element derive_wire(const B& backend, const SecretKey<B>& sk, const Ciphertext<B>& ct, int w) {
  return Decryptor<B>(backend, sk, ct).wire(w);
}

// Number of group elements in a key: header plus 2 per input, 4 per OR,
// 3 per AND.
template <MultilinearBackend B>
std::size_t component_count(const SecretKey<B>& sk) {
  std::size_t count = 1;
  for (const auto& w : sk.wires)
    count += std::visit([](const auto& k) -> std::size_t {
      using K = std::decay_t<decltype(k)>;
      if constexpr (std::is_same_v<K, InputKey<B>>) return 2;
      else if constexpr (std::is_same_v<K, OrKey<B>>) return 4;
      else return 3;
    }, w);
  return count;
}

}  // namespace mlabe::kpabe
