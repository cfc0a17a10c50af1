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

#include "v2isc/schnorr.hpp"

namespace v2isc {

namespace {

Scalar challenge(const Group& g, const Point& R, ByteView msg) {
  return h1(g, kTagCert, Encoder().point(R).bytes(msg));
}

}  // namespace

SchnorrSignature schnorr_sign(const Group& g, const Scalar& sk, ByteView msg, Rng& rng) {
  if (sk.is_zero()) throw ProtocolError(ErrorCode::kInvalidScalar, "zero signing key");
  Scalar k = Scalar::random_nonzero(g, rng);
  Point R = g.mul_generator(k);
  Scalar s = k + challenge(g, R, msg) * sk;
  return {std::move(R), std::move(s)};
}

bool schnorr_verify(const Point& pk, ByteView msg, const SchnorrSignature& sig) {
  if (!pk.valid() || !sig.R.valid() || sig.s.raw() == nullptr) return false;
  const Group& g = pk.group();
  if (&sig.R.group() != &g || &sig.s.group() != &g) return false;
  if (pk.is_identity() || sig.R.is_identity()) return false;
  return g.mul_generator(sig.s) == sig.R + challenge(g, sig.R, msg) * pk;
}

}  // namespace v2isc
