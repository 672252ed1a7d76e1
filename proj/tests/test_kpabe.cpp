#include <gtest/gtest.h>

#include "mlabe/kpabe.hpp"
#include "mlabe/testing/oracle.hpp"
#include "support/gen.hpp"

using namespace mlabe;
using namespace mlabe::kpabe;
using mlabe::testing::oracle_exponent;

namespace {

constexpr auto AND = GateType::And;
constexpr auto OR = GateType::Or;

struct World {
  GroupDescriptor gd;
  ReferenceBackend be;
  KeyPair<ReferenceBackend> keys;

  World(unsigned bits, int n, int depth, Rng& rng)
      : gd(GroupDescriptor::generate(bits, depth + 1, rng)), be(gd), keys(setup(be, n, depth, rng)) {}

  mpz_class ex(const LevelledElement& e) const { return oracle_exponent(gd, e).value(); }
  mpz_class mod(const mpz_class& v) const { return reduce(gd, v).value(); }
  mpz_class alpha() const { return ex(keys.pp.H); }
};

}  // namespace

TEST(Setup, Shape) {
  Rng rng(1);
  World w(64, 2, 2, rng);
  EXPECT_EQ(w.gd.degree(), 3);
  EXPECT_EQ(w.keys.pp.H.level(), 3);
  EXPECT_EQ(w.keys.msk.K.level(), 2);
  EXPECT_EQ(w.keys.pp.h.size(), 2U);
  for (const auto& h : w.keys.pp.h) EXPECT_EQ(h.level(), 1);
  EXPECT_EQ(w.ex(w.keys.msk.K), w.alpha());
}

TEST(Setup, ForcedZeroAlpha) {
  Rng rng(2);
  const GroupDescriptor gd(101, 3);
  const ReferenceBackend be(gd);
  const auto keys = setup(be, 2, 2, rng, SetupOptions<ReferenceBackend>{Scalar::zero()});
  EXPECT_EQ(keys.pp.H, be.identity(3));
}

TEST(Setup, ParameterValidation) {
  Rng rng(3);
  const ReferenceBackend be(GroupDescriptor(101, 3));
  EXPECT_THROW(setup(be, 0, 2, rng), InvalidArgument);
  EXPECT_THROW(setup(be, 2, 0, rng), InvalidArgument);
  EXPECT_THROW(setup(be, 2, 3, rng), InvalidArgument);
}

TEST(Encrypt, MessageSlotIsAlphaS) {
  Rng rng(4);
  World w(256, 3, 2, rng);
  const auto ct = encrypt(w.be, w.keys.pp, {1, 0, 1}, true, rng);
  const mpz_class s = w.ex(ct.C_s);
  EXPECT_EQ(w.ex(ct.C_M), w.mod(w.alpha() * s));
  ASSERT_EQ(ct.C.size(), 2U);
  EXPECT_EQ(w.ex(ct.C.at(1)), w.mod(w.ex(w.keys.pp.h[0]) * s));
  EXPECT_EQ(w.ex(ct.C.at(3)), w.mod(w.ex(w.keys.pp.h[2]) * s));
  EXPECT_THROW(encrypt(w.be, w.keys.pp, {1, 0}, true, rng), InvalidArgument);
}

TEST(Encrypt, AllZeroInputHasNoComponents) {
  Rng rng(5);
  World w(64, 3, 2, rng);
  const auto ct = encrypt(w.be, w.keys.pp, {0, 0, 0}, true, rng);
  EXPECT_TRUE(ct.C.empty());
  EXPECT_EQ(ct.C_s.level(), 1);
  EXPECT_EQ(ct.C_M.level(), 3);
}

TEST(Keygen, ComponentsSatisfyDefiningEquations) {
  Rng rng(6);
  for (int t = 0; t < 40; ++t) {
    const int depth = rng.uniform_int(2, 5);
    const auto f = test::random_layered(rng, rng.uniform_int(1, 6), depth);
    World w(128, f.inputs(), depth, rng);
    KeyTrace<ReferenceBackend> trace;
    const auto sk = keygen(w.be, w.keys.msk, w.keys.pp, f, rng, &trace);
    ASSERT_EQ(trace.size(), static_cast<std::size_t>(f.wire_count()));
    const auto r = [&](int wire) { return trace[static_cast<std::size_t>(wire - 1)].r.value(); };
    const auto d = depths(f);
    EXPECT_EQ(sk.K_H.level(), depth);
    EXPECT_EQ(w.ex(sk.K_H), w.mod(w.alpha() - r(f.output())));
    for (int wire = 1; wire <= f.wire_count(); ++wire) {
      const auto& rec = trace[static_cast<std::size_t>(wire - 1)];
      const int j = d[static_cast<std::size_t>(wire - 1)];
      if (f.is_input(wire)) {
        const auto& k = std::get<InputKey<ReferenceBackend>>(sk.wire(wire));
        const mpz_class z = rec.z->value();
        EXPECT_EQ(w.ex(k.K1), w.mod(r(wire) + w.ex(w.keys.pp.h[static_cast<std::size_t>(wire - 1)]) * z));
        EXPECT_EQ(w.ex(k.K2), w.mod(-z));
        continue;
      }
      const Gate& g = f.gate(wire);
      const mpz_class a = rec.a->value(), b = rec.b->value();
      if (g.type == OR) {
        const auto& k = std::get<OrKey<ReferenceBackend>>(sk.wire(wire));
        EXPECT_EQ(w.ex(k.K1), a);
        EXPECT_EQ(w.ex(k.K2), b);
        EXPECT_EQ(k.K3.level(), j);
        EXPECT_EQ(k.K4.level(), j);
        EXPECT_EQ(w.ex(k.K3), w.mod(r(wire) - a * r(g.a)));
        EXPECT_EQ(w.ex(k.K4), w.mod(r(wire) - b * r(g.b)));
      } else {
        const auto& k = std::get<AndKey<ReferenceBackend>>(sk.wire(wire));
        EXPECT_EQ(w.ex(k.K1), a);
        EXPECT_EQ(w.ex(k.K2), b);
        EXPECT_EQ(k.K3.level(), j);
        EXPECT_EQ(w.ex(k.K3), w.mod(r(wire) - a * r(g.a) - b * r(g.b)));
      }
    }
  }
}

TEST(Keygen, ComponentCount) {
  Rng rng(7);
  World w(64, 2, 3, rng);
  const auto f = layer_and_pad(Circuit(2, {{AND, 1, 2}}), 3);
  const auto sk = keygen(w.be, w.keys.msk, w.keys.pp, f, rng);
  EXPECT_EQ(component_count(sk), 2U * 2 + 3 + 4 + 1);
}

TEST(Keygen, IndependentKeysForSameCircuit) {
  Rng rng(8);
  World w(256, 2, 2, rng);
  const Circuit f(2, {{OR, 1, 2}});
  const auto a = keygen(w.be, w.keys.msk, w.keys.pp, f, rng);
  const auto b = keygen(w.be, w.keys.msk, w.keys.pp, f, rng);
  EXPECT_NE(a.K_H, b.K_H);
  for (int wire = 1; wire <= 3; ++wire) {
    std::visit([&](const auto& ka) {
      using K = std::decay_t<decltype(ka)>;
      EXPECT_NE(ka.K1, std::get<K>(b.wire(wire)).K1);
    }, a.wire(wire));
  }
}

TEST(Keygen, RejectsBadPolicies) {
  Rng rng(9);
  World w(64, 2, 3, rng);
  EXPECT_THROW(keygen(w.be, w.keys.msk, w.keys.pp, Circuit(2, {{AND, 1, 2}}), rng), InvalidArgument);
  EXPECT_THROW(keygen(w.be, w.keys.msk, w.keys.pp, Circuit(3, {{AND, 1, 2}, {OR, 4, 4}}), rng), InvalidArgument);
  EXPECT_THROW(keygen(w.be, w.keys.msk, w.keys.pp, Circuit(2, {{OR, 1, 2}, {AND, 1, 3}}), rng), InvalidArgument);
}

TEST(Decrypt, RoundTripRandom) {
  Rng rng(10);
  int done = 0;
  while (done < 100) {
    const auto f = test::random_layered(rng);
    const auto x = test::find_input(rng, f, true);
    if (!x) continue;
    World w(128, f.inputs(), depth(f), rng);
    const auto sk = keygen(w.be, w.keys.msk, w.keys.pp, f, rng);
    EXPECT_TRUE(decrypt(w.be, sk, encrypt(w.be, w.keys.pp, *x, true, rng)));
    EXPECT_FALSE(decrypt(w.be, sk, encrypt(w.be, w.keys.pp, *x, false, rng)));
    ++done;
  }
}

TEST(Decrypt, UnauthorizedIsNotSatisfied) {
  Rng rng(11);
  World w(64, 2, 2, rng);
  const auto sk = keygen(w.be, w.keys.msk, w.keys.pp, Circuit(2, {{OR, 1, 2}}), rng);
  EXPECT_THROW(decrypt(w.be, sk, encrypt(w.be, w.keys.pp, {0, 0}, true, rng)), NotSatisfied);
  EXPECT_THROW(decrypt(w.be, sk, encrypt(w.be, w.keys.pp, {0, 0}, false, rng)), NotSatisfied);
}

TEST(Decrypt, LengthMismatch) {
  Rng rng(12);
  World w(64, 2, 2, rng);
  World v(64, 3, 2, rng);
  const auto sk = keygen(w.be, w.keys.msk, w.keys.pp, Circuit(2, {{OR, 1, 2}}), rng);
  EXPECT_THROW(decrypt(w.be, sk, encrypt(v.be, v.keys.pp, {1, 1, 1}, true, rng)), InvalidArgument);
}

TEST(Decrypt, FalseAcceptRateAtToyPrime) {
  // M=0 decrypts to 1 exactly when the random C_M hits g_k^{alpha s}.
  Rng rng(13);
  const GroupDescriptor gd(101, 4);
  const ReferenceBackend be(gd);
  const Circuit f(2, {{OR, 1, 2}, {OR, 3, 3}});
  int accepts = 0;
  const int trials = 1000;
  for (int t = 0; t < trials; ++t) {
    const auto keys = setup(be, 2, 3, rng);
    const auto sk = keygen(be, keys.msk, keys.pp, f, rng);
    accepts += decrypt(be, sk, encrypt(be, keys.pp, {1, 0}, false, rng)) ? 1 : 0;
  }
  EXPECT_LE(accepts, trials * 5 / 100);
}

TEST(DeriveWire, ExponentIsSR) {
  Rng rng(14);
  for (int t = 0; t < 30; ++t) {
    const auto f = test::random_layered(rng, rng.uniform_int(1, 6), rng.uniform_int(2, 5));
    World w(128, f.inputs(), depth(f), rng);
    KeyTrace<ReferenceBackend> trace;
    const auto sk = keygen(w.be, w.keys.msk, w.keys.pp, f, rng, &trace);
    const auto x = test::random_assignment(rng, f.inputs());
    const auto ct = encrypt(w.be, w.keys.pp, x, true, rng);
    const mpz_class s = w.ex(ct.C_s);
    const auto d = depths(f);
    const auto val = evaluate(f, x);
    Decryptor<ReferenceBackend> dec(w.be, sk, ct);
    for (int wire = 1; wire <= f.wire_count(); ++wire) {
      if (!val.value(wire)) {
        EXPECT_THROW(dec.wire(wire), NotSatisfied);
        continue;
      }
      const auto& e = dec.wire(wire);
      EXPECT_EQ(e.level(), d[static_cast<std::size_t>(wire - 1)] + 1);
      EXPECT_EQ(w.ex(e), w.mod(s * trace[static_cast<std::size_t>(wire - 1)].r.value()));
    }
  }
}

TEST(DeriveWire, OrBranchesAgree) {
  Rng rng(15);
  World w(64, 2, 2, rng);
  const Circuit f(2, {{OR, 1, 2}});
  const auto sk = keygen(w.be, w.keys.msk, w.keys.pp, f, rng);
  const auto both = encrypt(w.be, w.keys.pp, {1, 1}, true, rng);
  Decryptor<ReferenceBackend> dec(w.be, sk, both);
  EXPECT_EQ(dec.or_via(3, Branch::A), dec.or_via(3, Branch::B));
  const auto only_b = encrypt(w.be, w.keys.pp, {0, 1}, true, rng);
  Decryptor<ReferenceBackend> dec_b(w.be, sk, only_b);
  EXPECT_EQ(w.ex(dec_b.wire(3)), w.ex(dec_b.or_via(3, Branch::B)));
  EXPECT_THROW(dec_b.or_via(3, Branch::A), NotSatisfied);
  EXPECT_EQ(derive_wire(w.be, sk, only_b, 3), dec_b.wire(3));
}

TEST(DeriveWire, AndNeedsBothChildren) {
  Rng rng(16);
  World w(64, 2, 2, rng);
  const auto sk = keygen(w.be, w.keys.msk, w.keys.pp, Circuit(2, {{AND, 1, 2}}), rng);
  const auto ct = encrypt(w.be, w.keys.pp, {1, 0}, true, rng);
  Decryptor<ReferenceBackend> dec(w.be, sk, ct);
  EXPECT_NO_THROW(dec.wire(1));
  EXPECT_THROW(dec.wire(2), NotSatisfied);
  EXPECT_THROW(dec.wire(3), NotSatisfied);
}

TEST(Decrypt, HeaderCancelsOutputWire) {
  Rng rng(17);
  World w(128, 3, 3, rng);
  const auto f = layer_and_pad(Circuit(3, {{AND, 1, 2}, {OR, 3, 4}}), 3);
  const auto sk = keygen(w.be, w.keys.msk, w.keys.pp, f, rng);
  const auto ct = encrypt(w.be, w.keys.pp, {0, 0, 1}, true, rng);
  Decryptor<ReferenceBackend> dec(w.be, sk, ct);
  const auto total = w.be.mul(dec.header(), dec.wire(f.output()));
  EXPECT_EQ(w.ex(total), w.mod(w.alpha() * w.ex(ct.C_s)));
  EXPECT_EQ(total.level(), 4);
}
