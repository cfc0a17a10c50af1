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

#include "v2isc/kmc.hpp"

#include "v2isc/scheme.hpp"

namespace v2isc {

KeyManagementCenter KeyManagementCenter::setup(const Group& g, Rng& rng) {
  Scalar s = Scalar::random_nonzero(g, rng);
  Point pub = g.mul_generator(s);
  return KeyManagementCenter(g, MasterKey{std::move(s), std::move(pub)});
}

PartialKey KeyManagementCenter::issue_partial_key(const PseudoId& pid, Rng& rng) const {
  Scalar k = Scalar::random_nonzero(*group_, rng);
  Point Y = group_->mul_generator(k);
  Scalar q = partial_key_hash(*group_, pid, Y);
  return PartialKey{std::move(Y), k + key_.secret * q};
}

RsuCertificate KeyManagementCenter::issue_rsu_cert(ByteView rsu_id, const Point& rsu_public,
                                                   Rng& rng) const {
  if (!rsu_public.valid() || &rsu_public.group() != group_ || rsu_public.is_identity()) {
    throw ProtocolError(ErrorCode::kInvalidPoint, "RSU public key is not a usable group element");
  }
  RsuCertificate cert;
  cert.rsu_id.assign(rsu_id.begin(), rsu_id.end());
  cert.rsu_public = rsu_public;
  cert.sig = schnorr_sign(*group_, key_.secret, cert.signed_message(), rng);
  return cert;
}

bool partial_key_valid(const Point& master_public, const PseudoId& pid, const PartialKey& key) {
  const Group& g = master_public.group();
  if (key.public_part.is_identity()) return false;
  Scalar q = partial_key_hash(g, pid, key.public_part);
  return g.mul_generator(key.private_part) == key.public_part + q * master_public;
}

bool verify_rsu_cert(const Point& master_public, const RsuCertificate& cert) {
  if (!cert.rsu_public.valid() || cert.rsu_public.is_identity()) return false;
  return schnorr_verify(master_public, cert.signed_message(), cert.sig);
}

}  // namespace v2isc
