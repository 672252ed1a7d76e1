#pragma once

// Line-oriented text forms of the reference-backend artifacts.
//
//   PP v1                 MSK v1            CT v1
//   GROUP p=<p> k=<k>     GROUP ...         GROUP ...
//   H=L<k>:<e>            K=L<k-1>:<e>      x=<bits>
//   h1=L1:<e>                               CM=L<k>:<e>
//   ...                                     Cs=L1:<e>
//                                           C<i>=L1:<e>   (x_i = 1)
//
//   SK v1
//   GROUP ...
//   ```circuit
//   <circuit text>
//   ```
//   KH=L<k-1>:<e>
//   w<i>.K1=...           (K1,K2 inputs; K1..K4 OR; K1..K3 AND)
//
// Parsing accepts exactly the canonical rendering, so to_text(from_text(t))
// == t for every accepted t. Violations throw FormatError.

#include <string>
#include <string_view>

#include "mlabe/kpabe.hpp"

namespace mlabe::kpabe {

using RefPublicParams = PublicParams<ReferenceBackend>;
using RefMasterSecret = MasterSecret<ReferenceBackend>;
using RefCiphertext = Ciphertext<ReferenceBackend>;
using RefSecretKey = SecretKey<ReferenceBackend>;

std::string to_text(const RefPublicParams& pp);
std::string to_text(const RefMasterSecret& msk);
std::string to_text(const RefCiphertext& ct);
std::string to_text(const RefSecretKey& sk);

RefPublicParams public_params_from_text(std::string_view text);
RefMasterSecret master_secret_from_text(std::string_view text);
RefCiphertext ciphertext_from_text(std::string_view text);
RefSecretKey secret_key_from_text(std::string_view text);

}  // namespace mlabe::kpabe
