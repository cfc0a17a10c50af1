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

#include "v2isc/scheme.hpp"

namespace v2isc {

Scalar partial_key_hash(const Group& g, const PseudoId& pid, const Point& partial_public) {
  Encoder e;
  pid.encode_to(e);
  e.point(partial_public);
  return h1(g, kTagH1, e);
}

Scalar identity_hash(const Group& g, const PseudoId& pid, const Point& partial_public,
                     const Point& secret_public, Timestamp tt) {
  Encoder e;
  pid.encode_to(e);
  e.point(partial_public).point(secret_public).timestamp(tt);
  return h1(g, kTagH1, e);
}

Scalar ciphertext_hash(const Group& g, ByteView c, const Point& ephemeral,
                       ByteView cert_encoding, Timestamp tt) {
  return h1(g, kTagH1, Encoder().bytes(c).point(ephemeral).raw(cert_encoding).timestamp(tt));
}

Scalar beacon_hash(const Group& g, const Point& shared) {
  return h1(g, kTagH1, Encoder().point(shared));
}

}  // namespace v2isc
