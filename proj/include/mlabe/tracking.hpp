#pragma once

// Moves reference-backend artifacts into the size-bound backend and back.
//
// Bounds depend only on the sequence of operations, never on the values, so
// the bounds of a stored artifact are recovered by replaying the algorithm
// that produced it on the bounded backend with throwaway randomness and
// attaching the resulting bounds to the stored elements.

#include <string>

#include "mlabe/kpabe_io.hpp"
#include "mlabe/sizebound.hpp"

namespace mlabe::kpabe {

using BoundedPublicParams = PublicParams<BoundedBackend>;
using BoundedMasterSecret = MasterSecret<BoundedBackend>;
using BoundedCiphertext = Ciphertext<BoundedBackend>;
using BoundedSecretKey = SecretKey<BoundedBackend>;

BoundedPublicParams track(const BoundedBackend& backend, const RefPublicParams& pp);
BoundedMasterSecret track(const BoundedBackend& backend, const RefMasterSecret& msk);
BoundedSecretKey track(const BoundedBackend& backend, const RefSecretKey& sk);
// C_M is tracked as an encryption of 1; decryption only compares it.
BoundedCiphertext track(const BoundedBackend& backend, const RefCiphertext& ct);

RefPublicParams untrack(const BoundedPublicParams& pp);
RefMasterSecret untrack(const BoundedMasterSecret& msk);
RefSecretKey untrack(const BoundedSecretKey& sk);
RefCiphertext untrack(const BoundedCiphertext& ct);

// One line per level: "level <i>: 2^<max> of 2^<budget> (<pct>%)".
std::string utilization_report(const BudgetMeter& meter);

}  // namespace mlabe::kpabe
