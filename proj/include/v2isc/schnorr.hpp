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

#include "v2isc/hash.hpp"

namespace v2isc {

// Schnorr signature over the protocol group, used for RSU certificates and
// beacons:  R = kP,  s = k + h1("cert", R, msg) * sk.
struct SchnorrSignature {
  Point R;
  Scalar s;
};

SchnorrSignature schnorr_sign(const Group& g, const Scalar& sk, ByteView msg, Rng& rng);

// Accepts iff sP == R + h1("cert", R, msg) * pk. Malformed inputs reject.
bool schnorr_verify(const Point& pk, ByteView msg, const SchnorrSignature& sig);

}  // namespace v2isc
