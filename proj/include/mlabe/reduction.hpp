#pragma once

// Selective-security reduction from the decision k-multilinear problem,
// runnable on the reference backend.
//
// The simulator receives g, g^s, g^{c_1}, ..., g^{c_k}, T and a challenge
// input x*. It programs h_i and g_k^alpha = g_k^{xi + c_1...c_k} so that, for
// every wire w at depth j of a queried circuit with f(x*) = 0, it knows r_w
// either outright (f_w(x*) = 1) or as c_1...c_{j+1} + eta_w (f_w(x*) = 0).
// Every key component is then computable from public instance elements
// through cancellations, and the header collapses to g_{k-1}^{xi - eta_out}.
//
// None of the functions here read the witness; it lives in MddhInstance only
// so the checkers in reduction_check.hpp can use it.

#include <functional>
#include <optional>
#include <vector>

#include "mlabe/kpabe.hpp"

namespace mlabe::reduction {

using Backend = ReferenceBackend;
using PublicParams = kpabe::PublicParams<Backend>;
using Ciphertext = kpabe::Ciphertext<Backend>;
using SecretKey = kpabe::SecretKey<Backend>;

// What the distinguisher is given.
struct MddhChallenge {
  GroupDescriptor group;
  LevelledElement g;                 // g_1
  LevelledElement g_s;               // g^s
  std::vector<LevelledElement> g_c;  // g^{c_1}..g^{c_k}
  LevelledElement T;                 // g_k^{s c_1...c_k} or uniform
};

struct MddhWitness {
  Scalar s;
  std::vector<Scalar> c;  // c_1..c_k
  bool real = false;
};

struct MddhInstance {
  MddhChallenge challenge;
  MddhWitness witness;
};

MddhInstance gen_instance(const GroupDescriptor& gd, bool real, Rng& rng);

// offset + (+/-) term, with term one of: nothing, c_index, c_1 * ... * c_index.
struct SymbolicScalar {
  enum class Term { None, Single, Prefix };

  Term term = Term::None;
  int index = 0;
  bool negated = false;
  Scalar offset = Scalar::zero();

  static SymbolicScalar known(Scalar v) { return {Term::None, 0, false, std::move(v)}; }
  static SymbolicScalar prefix(int m, Scalar offset) { return {Term::Prefix, m, false, std::move(offset)}; }
  static SymbolicScalar single(int i, bool negated, Scalar offset) {
    return {Term::Single, i, negated, std::move(offset)};
  }

  bool is_known() const { return term == Term::None; }
  Scalar evaluate(const GroupDescriptor& gd, const MddhWitness& witness) const;
};

// The simulator's view of one wire's key randomness.
struct WireRecord {
  bool satisfied = false;  // f_w(x*)
  int depth = 0;
  SymbolicScalar r;
  std::optional<SymbolicScalar> z, a, b;
};

struct SimulatorState {
  Assignment x_star;
  std::vector<Scalar> y;  // y_1..y_n
  Scalar xi = Scalar::zero();
};

struct SimulatedSetup {
  PublicParams pp;
  SimulatorState state;
};

struct SimulatedKey {
  SecretKey key;
  std::vector<WireRecord> wires;  // index w-1
};

// h_i = g^{y_i} (x*_i = 1) or g^{y_i + c_1} (x*_i = 0); H = g_k^{xi + c_1...c_k}.
SimulatedSetup sim_setup(const MddhChallenge& inst, const Assignment& x_star, Rng& rng);

// (T * g_k^{xi s}, g^s, (g^s)^{y_i} for x*_i = 1)
Ciphertext sim_challenge(const MddhChallenge& inst, const SimulatorState& state);

// Key for f with f(x*) = 0. Throws InvalidArgument otherwise.
SimulatedKey sim_keygen(const MddhChallenge& inst, const SimulatorState& state, const PublicParams& pp,
                        const Circuit& f, Rng& rng);

// Adversary queried f with f(x*) = 1, or otherwise broke the game's rules.
class GameAbort : public Error {
 public:
  using Error::Error;
};

using KeygenOracle = std::function<SecretKey(const Circuit&)>;
// Returns its guess M' of the challenge message.
using Adversary = std::function<bool(const PublicParams&, const Ciphertext&, const KeygenOracle&)>;

struct GameTranscript {
  std::optional<PublicParams> pp;
  std::optional<Ciphertext> challenge;
  std::vector<Circuit> queries;
  bool message_guess = false;
};

// Plays the selective game against `adversary` with challenge input x_star.
// Returns true ("T is real") iff the adversary outputs M' = 1.
bool run_game(const MddhChallenge& inst, const Assignment& x_star, const Adversary& adversary, Rng& rng,
              GameTranscript* transcript = nullptr);

}  // namespace mlabe::reduction
