#include "mlabe/tracking.hpp"

#include <cstdio>

namespace mlabe::kpabe {

namespace {

using BE = BoundedElement;

BE attach(const BoundedBackend& backend, const BE& shape, const LevelledElement& value) {
  if (shape.level() != value.level()) throw FormatError("stored element has an unexpected level");
  return backend.wrap(value, shape.log_bound, shape.factors);
}

// Bounds are value-independent, so any seed gives the same shapes.
Rng replay_rng() { return Rng(0); }

KeyPair<BoundedBackend> replay_setup(const BoundedBackend& backend, int inputs) {
  Rng rng = replay_rng();
  return setup(backend, inputs, backend.degree() - 1, rng);
}

}  // namespace

BoundedPublicParams track(const BoundedBackend& backend, const RefPublicParams& pp) {
  if (pp.group != backend.group()) throw InvalidArgument("public parameters belong to another group");
  const auto shape = replay_setup(backend, pp.inputs).pp;
  BoundedPublicParams out{pp.group, pp.inputs, pp.depth, attach(backend, shape.H, pp.H), {}};
  for (std::size_t i = 0; i < pp.h.size(); ++i) out.h.push_back(attach(backend, shape.h.at(i), pp.h[i]));
  return out;
}

BoundedMasterSecret track(const BoundedBackend& backend, const RefMasterSecret& msk) {
  if (msk.group != backend.group()) throw InvalidArgument("master secret belongs to another group");
  const auto shape = replay_setup(backend, 1).msk;
  return {msk.group, attach(backend, shape.K, msk.K)};
}

BoundedSecretKey track(const BoundedBackend& backend, const RefSecretKey& sk) {
  if (sk.group != backend.group()) throw InvalidArgument("secret key belongs to another group");
  const auto keys = replay_setup(backend, sk.f.inputs());
  Rng rng = replay_rng();
  const auto shape = keygen(backend, keys.msk, keys.pp, sk.f, rng);
  BoundedSecretKey out{sk.group, sk.f, attach(backend, shape.K_H, sk.K_H), {}};
  for (std::size_t i = 0; i < sk.wires.size(); ++i) {
    const auto& want = shape.wires.at(i);
    std::visit([&](const auto& k) {
      using K = std::decay_t<decltype(k)>;
      if constexpr (std::is_same_v<K, InputKey<ReferenceBackend>>) {
        const auto& s = std::get<InputKey<BoundedBackend>>(want);
        out.wires.emplace_back(InputKey<BoundedBackend>{attach(backend, s.K1, k.K1), attach(backend, s.K2, k.K2)});
      } else if constexpr (std::is_same_v<K, OrKey<ReferenceBackend>>) {
        const auto& s = std::get<OrKey<BoundedBackend>>(want);
        out.wires.emplace_back(OrKey<BoundedBackend>{attach(backend, s.K1, k.K1), attach(backend, s.K2, k.K2),
                                                     attach(backend, s.K3, k.K3), attach(backend, s.K4, k.K4)});
      } else {
        const auto& s = std::get<AndKey<BoundedBackend>>(want);
        out.wires.emplace_back(AndKey<BoundedBackend>{attach(backend, s.K1, k.K1), attach(backend, s.K2, k.K2),
                                                      attach(backend, s.K3, k.K3)});
      }
    }, sk.wires[i]);
  }
  return out;
}

BoundedCiphertext track(const BoundedBackend& backend, const RefCiphertext& ct) {
  if (ct.group != backend.group()) throw InvalidArgument("ciphertext belongs to another group");
  const auto keys = replay_setup(backend, static_cast<int>(ct.x.size()));
  Rng rng = replay_rng();
  const auto shape = encrypt(backend, keys.pp, ct.x, true, rng);
  BoundedCiphertext out{ct.group, ct.x, attach(backend, shape.C_M, ct.C_M), attach(backend, shape.C_s, ct.C_s), {}};
  for (const auto& [i, c] : ct.C) out.C.emplace(i, attach(backend, shape.C.at(i), c));
  return out;
}

RefPublicParams untrack(const BoundedPublicParams& pp) {
  RefPublicParams out{pp.group, pp.inputs, pp.depth, pp.H.inner, {}};
  for (const auto& h : pp.h) out.h.push_back(h.inner);
  return out;
}

RefMasterSecret untrack(const BoundedMasterSecret& msk) { return {msk.group, msk.K.inner}; }

RefSecretKey untrack(const BoundedSecretKey& sk) {
  RefSecretKey out{sk.group, sk.f, sk.K_H.inner, {}};
  for (const auto& w : sk.wires) {
    std::visit([&](const auto& k) {
      using K = std::decay_t<decltype(k)>;
      if constexpr (std::is_same_v<K, InputKey<BoundedBackend>>)
        out.wires.emplace_back(InputKey<ReferenceBackend>{k.K1.inner, k.K2.inner});
      else if constexpr (std::is_same_v<K, OrKey<BoundedBackend>>)
        out.wires.emplace_back(OrKey<ReferenceBackend>{k.K1.inner, k.K2.inner, k.K3.inner, k.K4.inner});
      else
        out.wires.emplace_back(AndKey<ReferenceBackend>{k.K1.inner, k.K2.inner, k.K3.inner});
    }, w);
  }
  return out;
}

RefCiphertext untrack(const BoundedCiphertext& ct) {
  RefCiphertext out{ct.group, ct.x, ct.C_M.inner, ct.C_s.inner, {}};
  for (const auto& [i, c] : ct.C) out.C.emplace(i, c.inner);
  return out;
}

std::string utilization_report(const BudgetMeter& meter) {
  std::string out;
  for (const auto& [level, e] : meter.entries()) {
    const double used = boost::rational_cast<double>(e.max_bound);
    const double budget = boost::rational_cast<double>(e.budget);
    char line[128];
    std::snprintf(line, sizeof line, "level %d: 2^%.3f of 2^%.3f (%.1f%%)\n", level, used, budget,
                  budget > 0 ? 100.0 * used / budget : 0.0);
    out += line;
  }
  return out;
}

}  // namespace mlabe::kpabe
