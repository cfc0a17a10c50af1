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

// The H1 evaluations shared by the signcrypting vehicle and the verifying RSU.
// Both sides must hash byte-identical inputs, so they live in one place.

#pragma once

#include "v2isc/messages.hpp"

namespace v2isc {

// Q = H1(PID, Y): binds a partial public key to its pseudonym.
Scalar partial_key_hash(const Group& g, const PseudoId& pid, const Point& partial_public);

// h3 = H1(PID, Y, L, tt)
Scalar identity_hash(const Group& g, const PseudoId& pid, const Point& partial_public,
                     const Point& secret_public, Timestamp tt);

// h4 = H1(c, X, cert_R, tt). `cert_encoding` is the certificate wire form,
// precomputed once per beacon.
Scalar ciphertext_hash(const Group& g, ByteView c, const Point& ephemeral,
                       ByteView cert_encoding, Timestamp tt);

// H1(eta Y_R) = H1(gamma eta P): the beacon secret both sides share.
Scalar beacon_hash(const Group& g, const Point& shared);

}  // namespace v2isc
