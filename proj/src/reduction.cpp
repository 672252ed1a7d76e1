#include "mlabe/reduction.hpp"

namespace mlabe::reduction {

namespace {

// g_j^{c_1...c_j} by a left fold of pairings over g^{c_1}..g^{c_j}, cached.
class PrefixProducts {
 public:
  PrefixProducts(const Backend& be, const MddhChallenge& inst) : be_(be), inst_(inst) {}

  const LevelledElement& at(int j) {
    while (static_cast<int>(cache_.size()) < j) {
      const auto next = cache_.size();
      if (next == 0) cache_.push_back(inst_.g_c.at(0));
      else cache_.push_back(be_.pair(cache_.back(), inst_.g_c.at(next)));
    }
    return cache_[static_cast<std::size_t>(j - 1)];
  }

 private:
  const Backend& be_;
  const MddhChallenge& inst_;
  std::vector<LevelledElement> cache_;
};

class KeySimulator {
 public:
  KeySimulator(const MddhChallenge& inst, const SimulatorState& state, const PublicParams& pp, Rng& rng)
      : be_(inst.group), inst_(inst), state_(state), pp_(pp), rng_(rng), prefix_(be_, inst) {}

  SimulatedKey run(const Circuit& f) {
    kpabe::check_policy(f, pp_.inputs, pp_.depth);
    const Evaluation star = evaluate(f, state_.x_star);
    if (star.output) throw InvalidArgument("sim_keygen: the circuit accepts the challenge input");
    const auto d = depths(f);
    const int k = be_.degree();

    std::vector<WireRecord> records;
    std::vector<kpabe::WireKey<Backend>> wires;
    for (int w = 1; w <= f.wire_count(); ++w) {
      const bool sat = star.value(w);
      const int j = d[static_cast<std::size_t>(w - 1)];
      if (f.is_input(w)) {
        auto [key, rec] = input_wire(w, sat);
        wires.emplace_back(std::move(key));
        records.push_back(std::move(rec));
        continue;
      }
      const Gate& g = f.gate(w);
      const WireRecord& ra = records[static_cast<std::size_t>(g.a - 1)];
      const WireRecord& rb = records[static_cast<std::size_t>(g.b - 1)];
      WireRecord rec{sat, j, SymbolicScalar{}, std::nullopt, std::nullopt, std::nullopt};
      if (g.type == GateType::Or) wires.emplace_back(or_gate(j, sat, ra, rb, rec));
      else wires.emplace_back(and_gate(j, sat, ra, rb, rec));
      records.push_back(std::move(rec));
    }

    // The output wire is unsatisfied at depth k-1, so r_out = c_1...c_k + eta
    // and alpha - r_out = xi - eta.
    const WireRecord& out = records.back();
    const Scalar header = be_.minus(state_.xi, out.r.offset);
    SecretKey key{inst_.group, f, be_.encode(header, k - 1), std::move(wires)};
    return SimulatedKey{std::move(key), std::move(records)};
  }

 private:
  Scalar fresh() { return be_.sample_small(rng_); }

  // g_j^{value of form}, for known forms or the prefix c_1...c_j.
  LevelledElement at_level(const SymbolicScalar& form, int j) {
    if (form.is_known()) return be_.encode(form.offset, j);
    if (form.term != SymbolicScalar::Term::Prefix || form.index != j)
      throw Error("simulator invariant broken: expected c_1...c_" + std::to_string(j));
    return be_.mul(prefix_.at(j), be_.encode(form.offset, j));
  }

  // g^{c_i} moved to level j by pairing with g_{j-1}.
  LevelledElement lifted_c(int i, int j) {
    const LevelledElement& base = inst_.g_c.at(static_cast<std::size_t>(i - 1));
    return j == 1 ? base : be_.pair(base, be_.generator(j - 1));
  }

  std::pair<kpabe::InputKey<Backend>, WireRecord> input_wire(int w, bool sat) {
    const auto idx = static_cast<std::size_t>(w - 1);
    if (sat) {
      const Scalar r = fresh();
      const Scalar z = fresh();
      return {kpabe::detail::input_components(be_, pp_.h[idx], r, z),
              WireRecord{true, 1, SymbolicScalar::known(r), SymbolicScalar::known(z), std::nullopt, std::nullopt}};
    }
    // r = c_1 c_2 + eta, z = -c_2 + nu, h_w = g^{y + c_1}:
    // r + h z = -c_2 y + eta + (y + c_1) nu, and -z = c_2 - nu.
    const Scalar eta = fresh();
    const Scalar nu = fresh();
    const Scalar& y = state_.y[idx];
    const auto& g_c1 = inst_.g_c.at(0);
    const auto& g_c2 = inst_.g_c.at(1);
    LevelledElement K1 = be_.mul(be_.mul(be_.pow(g_c2, be_.negate(y)), be_.encode(be_.plus(eta, be_.times(y, nu)), 1)),
                                 be_.pow(g_c1, nu));
    LevelledElement K2 = be_.mul(g_c2, be_.encode(be_.negate(nu), 1));
    return {kpabe::InputKey<Backend>{std::move(K1), std::move(K2)},
            WireRecord{false, 1, SymbolicScalar::prefix(2, eta), SymbolicScalar::single(2, true, nu), std::nullopt,
                       std::nullopt}};
  }

  kpabe::WireKey<Backend> or_gate(int j, bool sat, const WireRecord& ra, const WireRecord& rb, WireRecord& rec) {
    if (sat) {
      const Scalar a = fresh();
      const Scalar b = fresh();
      const Scalar r = fresh();
      rec.r = SymbolicScalar::known(r);
      rec.a = SymbolicScalar::known(a);
      rec.b = SymbolicScalar::known(b);
      if (ra.r.is_known() && rb.r.is_known())
        return kpabe::detail::or_components(be_, j, a, b, r, ra.r.offset, rb.r.offset);
      // K3 = g_j^{r - a r_A}, K4 = g_j^{r - b r_B} with r_A or r_B in prefix form.
      return kpabe::OrKey<Backend>{
          be_.encode(a, 1), be_.encode(b, 1),
          be_.mul(be_.encode(r, j), be_.pow(at_level(ra.r, j), be_.negate(a))),
          be_.mul(be_.encode(r, j), be_.pow(at_level(rb.r, j), be_.negate(b)))};
    }
    // Both children unsatisfied: a = c_{j+1} + psi, b = c_{j+1} + phi,
    // r = c_1...c_{j+1} + eta.
    const Scalar psi = fresh();
    const Scalar phi = fresh();
    const Scalar eta = fresh();
    rec.r = SymbolicScalar::prefix(j + 1, eta);
    rec.a = SymbolicScalar::single(j + 1, false, psi);
    rec.b = SymbolicScalar::single(j + 1, false, phi);
    const auto& g_next = inst_.g_c.at(static_cast<std::size_t>(j));
    return kpabe::OrKey<Backend>{be_.mul(g_next, be_.encode(psi, 1)), be_.mul(g_next, be_.encode(phi, 1)),
                                 cancel_shift(j, eta, psi, ra.r.offset), cancel_shift(j, eta, phi, rb.r.offset)};
  }

  // g_j^{eta - c_{j+1} eta_child - t (c_1...c_j + eta_child)}
  LevelledElement cancel_shift(int j, const Scalar& eta, const Scalar& t, const Scalar& eta_child) {
    const LevelledElement known = be_.encode(be_.minus(eta, be_.times(t, eta_child)), j);
    const LevelledElement cross = be_.pow(lifted_c(j + 1, j), be_.negate(eta_child));
    const LevelledElement prefix = be_.pow(prefix_.at(j), be_.negate(t));
    return be_.mul(be_.mul(known, cross), prefix);
  }

  kpabe::WireKey<Backend> and_gate(int j, bool sat, const WireRecord& ra, const WireRecord& rb, WireRecord& rec) {
    if (sat) {
      // Both children satisfied, so everything is known.
      const Scalar a = fresh();
      const Scalar b = fresh();
      const Scalar r = fresh();
      rec.r = SymbolicScalar::known(r);
      rec.a = SymbolicScalar::known(a);
      rec.b = SymbolicScalar::known(b);
      return kpabe::detail::and_components(be_, j, a, b, r, ra.r.offset, rb.r.offset);
    }
    // The unsatisfied child (A when both are) takes the c_{j+1} factor; the
    // other child's coefficient stays a known phi.
    const bool a_side = !ra.satisfied;
    const WireRecord& hot = a_side ? ra : rb;
    const WireRecord& cold = a_side ? rb : ra;
    const Scalar psi = fresh();
    const Scalar phi = fresh();
    const Scalar eta = fresh();
    rec.r = SymbolicScalar::prefix(j + 1, eta);
    SymbolicScalar hot_coeff = SymbolicScalar::single(j + 1, false, psi);
    SymbolicScalar cold_coeff = SymbolicScalar::known(phi);
    rec.a = a_side ? hot_coeff : cold_coeff;
    rec.b = a_side ? cold_coeff : hot_coeff;

    const auto& g_next = inst_.g_c.at(static_cast<std::size_t>(j));
    LevelledElement K_hot = be_.mul(g_next, be_.encode(psi, 1));
    LevelledElement K_cold = be_.encode(phi, 1);
    // r - (c_{j+1} + psi) r_hot - phi r_cold
    //   = eta - c_{j+1} eta_hot - psi (c_1...c_j + eta_hot) - phi r_cold
    LevelledElement K3 =
        be_.mul(cancel_shift(j, eta, psi, hot.r.offset), be_.pow(at_level(cold.r, j), be_.negate(phi)));
    if (a_side) return kpabe::AndKey<Backend>{std::move(K_hot), std::move(K_cold), std::move(K3)};
    return kpabe::AndKey<Backend>{std::move(K_cold), std::move(K_hot), std::move(K3)};
  }

  Backend be_;
  const MddhChallenge& inst_;
  const SimulatorState& state_;
  const PublicParams& pp_;
  Rng& rng_;
  PrefixProducts prefix_;
};

}  // namespace

Scalar SymbolicScalar::evaluate(const GroupDescriptor& gd, const MddhWitness& witness) const {
  Scalar t = Scalar::one();
  switch (term) {
    case Term::None: return offset;
    case Term::Single: t = witness.c.at(static_cast<std::size_t>(index - 1)); break;
    case Term::Prefix:
      for (int i = 0; i < index; ++i) t = mul(gd, t, witness.c.at(static_cast<std::size_t>(i)));
      break;
  }
  if (negated) t = neg(gd, t);
  return add(gd, t, offset);
}

MddhInstance gen_instance(const GroupDescriptor& gd, bool real, Rng& rng) {
  const Backend be(gd);
  const int k = gd.degree();
  const Scalar s = random_scalar(gd, rng);
  std::vector<Scalar> c;
  std::vector<LevelledElement> g_c;
  Scalar product = s;
  for (int i = 0; i < k; ++i) {
    c.push_back(random_scalar(gd, rng));
    g_c.push_back(be.encode(c.back(), 1));
    product = mul(gd, product, c.back());
  }
  LevelledElement T = real ? be.encode(product, k) : be.random_element(k, rng);
  return MddhInstance{MddhChallenge{gd, be.generator(1), be.encode(s, 1), std::move(g_c), std::move(T)},
                      MddhWitness{s, std::move(c), real}};
}

SimulatedSetup sim_setup(const MddhChallenge& inst, const Assignment& x_star, Rng& rng) {
  const Backend be(inst.group);
  const int k = be.degree();
  if (k < 2) throw InvalidArgument("sim_setup: needs a group of degree at least 2");
  if (x_star.empty()) throw InvalidArgument("sim_setup: empty challenge input");
  SimulatorState state{x_star, {}, Scalar::zero()};
  std::vector<LevelledElement> h;
  for (std::size_t i = 0; i < x_star.size(); ++i) {
    state.y.push_back(be.sample_small(rng));
    LevelledElement gy = be.encode(state.y.back(), 1);
    h.push_back(x_star[i] ? std::move(gy) : be.mul(gy, inst.g_c.at(0)));
  }
  state.xi = be.sample_small(rng);
  PrefixProducts prefix(be, inst);
  LevelledElement H = be.mul(prefix.at(k), be.encode(state.xi, k));
  PublicParams pp{inst.group, static_cast<int>(x_star.size()), k - 1, std::move(H), std::move(h)};
  return SimulatedSetup{std::move(pp), std::move(state)};
}

Ciphertext sim_challenge(const MddhChallenge& inst, const SimulatorState& state) {
  const Backend be(inst.group);
  std::map<int, LevelledElement> C;
  for (std::size_t i = 0; i < state.x_star.size(); ++i)
    if (state.x_star[i]) C.emplace(static_cast<int>(i + 1), be.pow(inst.g_s, state.y[i]));
  // H^s = g_k^{(xi + c_1...c_k) s}, so the real-T message slot is T * g_k^{xi s}.
  const int k = inst.group.degree();
  const LevelledElement xi_s =
      k == 1 ? be.pow(inst.g_s, state.xi) : be.pair(inst.g_s, be.encode(state.xi, k - 1));
  return Ciphertext{inst.group, state.x_star, be.mul(inst.T, xi_s), inst.g_s, std::move(C)};
}

SimulatedKey sim_keygen(const MddhChallenge& inst, const SimulatorState& state, const PublicParams& pp,
                        const Circuit& f, Rng& rng) {
  return KeySimulator(inst, state, pp, rng).run(f);
}

bool run_game(const MddhChallenge& inst, const Assignment& x_star, const Adversary& adversary, Rng& rng,
              GameTranscript* transcript) {
  SimulatedSetup setup = sim_setup(inst, x_star, rng);
  const Ciphertext challenge = sim_challenge(inst, setup.state);
  std::vector<Circuit> queries;
  const KeygenOracle oracle = [&](const Circuit& f) -> SecretKey {
    queries.push_back(f);
    try {
      kpabe::check_policy(f, setup.pp.inputs, setup.pp.depth);
    } catch (const InvalidArgument& e) {
      throw GameAbort(std::string("key query rejected: ") + e.what());
    }
    if (evaluate(f, x_star).output) throw GameAbort("key query for a circuit that accepts the challenge input");
    return sim_keygen(inst, setup.state, setup.pp, f, rng).key;
  };
  const bool guess = adversary(setup.pp, challenge, oracle);
  if (transcript) {
    transcript->pp = setup.pp;
    transcript->challenge = challenge;
    transcript->queries = queries;
    transcript->message_guess = guess;
  }
  return guess;
}

}  // namespace mlabe::reduction
