#pragma once

// Exponent-oracle checks for the reduction simulator. These read the MDDH
// witness, which the simulator itself never does.

#include <string>
#include <vector>

#include "mlabe/reduction.hpp"

namespace mlabe::testing {

// alpha = xi + c_1...c_k as seen through the simulated H.
Scalar simulated_alpha(const reduction::MddhInstance& inst, const reduction::SimulatorState& state);

// h_i and H have the programmed exponents. Empty on success.
std::vector<std::string> check_simulated_setup(const reduction::MddhInstance& inst,
                                               const reduction::SimulatedSetup& setup);

// Every component satisfies KeyGen's defining equations for
// alpha = xi + c_1...c_k and the recorded r/z/a/b, and each record has the
// form its wire's value under x* requires (c_1...c_{j+1} + eta iff f_w(x*) = 0).
std::vector<std::string> check_simulated_key(const reduction::MddhInstance& inst,
                                             const reduction::SimulatedSetup& setup,
                                             const reduction::SimulatedKey& key);

// r_w for every wire of a reference-backend key, read back from the
// components alone: r = K1 + h_w K2 for inputs, K3 + a r_A (+ b r_B for AND)
// for gates, with a = K1 and b = K2. Index w-1.
std::vector<Scalar> oracle_wire_randomness(const GroupDescriptor& gd, const kpabe::PublicParams<ReferenceBackend>& pp,
                                           const kpabe::SecretKey<ReferenceBackend>& sk);

// Component-wise comparison of two ciphertexts through the oracle.
std::vector<std::string> compare_ciphertexts(const GroupDescriptor& gd, const reduction::Ciphertext& x,
                                             const reduction::Ciphertext& y, bool include_message = true);

}  // namespace mlabe::testing
