// Copyright 2026 The v2isc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "v2isc/kmc.hpp"
#include "v2isc/tra.hpp"

namespace v2isc {

// Full private key <y, l> and full public key <Y, L> under one pseudonym.
struct VehicleKeys {
  Scalar partial_private;  // y
  Scalar secret_value;     // l
  Point partial_public;    // Y
  Point secret_public;     // L = lP
  PseudoId pid;
};

// Picks l, obtains (Y, y) from the KMC and checks the partial key on receipt.
VehicleKeys register_vehicle(const SystemParams& params, const PseudoId& pid,
                             const KeyManagementCenter& kmc, Rng& rng);

// Receipt half of registration, separated so a corrupted delivery can be
// exercised. Throws kPartialKeyInvalid when yP != Y + H1(PID, Y) P_pub.
VehicleKeys accept_partial_key(const SystemParams& params, const PseudoId& pid,
                               const PartialKey& partial, Scalar secret_value);

// Certificate under P_pub, beacon signature under the certified key, and
// |now - tt_R| <= freshness_window.
bool validate_broadcast(const BroadcastPacket& pkt, const Point& master_public, Timestamp now,
                        std::int64_t freshness_window = kDefaultFreshnessWindow);

// One-pass signcryption of an l_m-bit report for the RSU that sent `pkt`.
// The caller validates `pkt` first. Throws kInvalidArgument for a wrong-length
// message and kExpiredPseudoId when the pseudonym is not valid at `tt`.
SigncryptedMessage signcrypt(const SystemParams& params, const VehicleKeys& keys,
                             const BroadcastPacket& pkt, ByteView message, Timestamp tt,
                             Rng& rng);

// Fresh lambda, pseudo-ID and registration. Nothing links the result to the
// previous key material except the TRA's ability to trace both.
VehicleKeys refresh_pseudonym(const SystemParams& params, const RealIdentity& rid,
                              ValidityPeriod validity, const TraceAuthority& tra,
                              const KeyManagementCenter& kmc, Rng& rng);

}  // namespace v2isc
