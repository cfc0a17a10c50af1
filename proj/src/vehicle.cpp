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

#include "v2isc/vehicle.hpp"

#include "v2isc/scheme.hpp"
#include "v2isc/wire.hpp"

namespace v2isc {

VehicleKeys accept_partial_key(const SystemParams& params, const PseudoId& pid,
                               const PartialKey& partial, Scalar secret_value) {
  if (!partial_key_valid(params.master_public, pid, partial)) {
    throw ProtocolError(ErrorCode::kPartialKeyInvalid, "partial key fails validity check");
  }
  VehicleKeys keys;
  keys.secret_public = params.g().mul_generator(secret_value);
  keys.secret_value = std::move(secret_value);
  keys.partial_private = partial.private_part;
  keys.partial_public = partial.public_part;
  keys.pid = pid;
  return keys;
}

VehicleKeys register_vehicle(const SystemParams& params, const PseudoId& pid,
                             const KeyManagementCenter& kmc, Rng& rng) {
  Scalar l = Scalar::random_nonzero(params.g(), rng);
  return accept_partial_key(params, pid, kmc.issue_partial_key(pid, rng), std::move(l));
}

bool validate_broadcast(const BroadcastPacket& pkt, const Point& master_public, Timestamp now,
                        std::int64_t freshness_window) {
  if (!verify_rsu_cert(master_public, pkt.cert)) return false;
  if (pkt.eta.raw() == nullptr || pkt.eta.is_zero()) return false;
  if (!schnorr_verify(pkt.cert.rsu_public, pkt.signed_message(), pkt.sig)) return false;
  const auto age = now.seconds - pkt.issued_at.seconds;
  return age <= freshness_window && -age <= freshness_window;
}

SigncryptedMessage signcrypt(const SystemParams& params, const VehicleKeys& keys,
                             const BroadcastPacket& pkt, ByteView message, Timestamp tt,
                             Rng& rng) {
  const Group& g = params.g();
  if (message.size() != params.message_bytes()) {
    throw ProtocolError(ErrorCode::kInvalidArgument, "message must be exactly l_m bits");
  }
  if (!check_pid_validity(keys.pid, tt)) {
    throw ProtocolError(ErrorCode::kExpiredPseudoId, "pseudo-ID not valid at send time");
  }
  const Point& rsu_public = pkt.cert.rsu_public;

  SigncryptedMessage out;
  Scalar x;
  Point shared;
  do {
    x = Scalar::random_nonzero(g, rng);
    out.X = g.mul_generator(x);
    shared = x * rsu_public;
  } while (shared.is_identity());

  out.c.assign(message.begin(), message.end());
  xor_into(out.c, h2(shared, params.message_bits));

  const Bytes cert_encoding = to_wire(pkt.cert);
  const Scalar h3 = identity_hash(g, keys.pid, keys.partial_public, keys.secret_public, tt);
  const Scalar h4 = ciphertext_hash(g, out.c, out.X, cert_encoding, tt);

  // Ephemeral trapdoor key z = eta (h3 - h4) + (y + l).
  const Scalar z = pkt.eta * (h3 - h4) + (keys.partial_private + keys.secret_value);
  const Scalar e = beacon_hash(g, pkt.eta * rsu_public);
  out.t = x - e * (z + keys.secret_value);

  out.Y = keys.partial_public;
  out.L = keys.secret_public;
  out.pid = keys.pid;
  out.tt = tt;
  return out;
}

VehicleKeys refresh_pseudonym(const SystemParams& params, const RealIdentity& rid,
                              ValidityPeriod validity, const TraceAuthority& tra,
                              const KeyManagementCenter& kmc, Rng& rng) {
  auto request = vehicle_pid_request(params.g(), rng);
  PseudoId pid = tra.issue_pid(rid, request.pid1, validity);
  return register_vehicle(params, pid, kmc, rng);
}

}  // namespace v2isc
