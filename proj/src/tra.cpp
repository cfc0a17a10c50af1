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

#include "v2isc/tra.hpp"

#include <algorithm>

namespace v2isc {

PseudonymRequest vehicle_pid_request(const Group& g, Rng& rng) {
  Scalar lambda = Scalar::random_nonzero(g, rng);
  Point pid1 = g.mul_generator(lambda);
  return {std::move(lambda), std::move(pid1)};
}

TraceAuthority TraceAuthority::setup(const Group& g, std::size_t id_len, Rng& rng) {
  if (id_len == 0 || id_len * 8 >= g.order_bits()) {
    throw ProtocolError(ErrorCode::kInvalidParams, "identity length does not fit a scalar");
  }
  Scalar beta = Scalar::random_nonzero(g, rng);
  Point pub = g.mul_generator(beta);
  return TraceAuthority(g, id_len, TraceKey{std::move(beta), std::move(pub)});
}

Bytes TraceAuthority::mask(const Point& pid1, ValidityPeriod validity) const {
  Encoder e;
  e.point(key_.secret * pid1).point(pid1).timestamp(validity.start).timestamp(validity.end);
  return h1(*group_, kTagPseudonym, e).to_bytes();
}

PseudoId TraceAuthority::issue_pid(const RealIdentity& rid, const Point& pid1,
                                   ValidityPeriod validity) const {
  if (!pid1.valid() || &pid1.group() != group_) {
    throw ProtocolError(ErrorCode::kInvalidPoint, "PID1 not in group");
  }
  if (pid1.is_identity()) throw ProtocolError(ErrorCode::kIdentityPoint, "PID1 is the identity");
  if (rid.rid.size() != id_len_) {
    throw ProtocolError(ErrorCode::kInvalidArgument, "real identity has wrong length");
  }
  Bytes pid2(group_->scalar_bytes(), 0);
  std::copy(rid.rid.begin(), rid.rid.end(), pid2.end() - static_cast<std::ptrdiff_t>(id_len_));
  xor_into(pid2, mask(pid1, validity));
  return PseudoId{pid1, std::move(pid2), validity};
}

Bytes TraceAuthority::unmask(const PseudoId& pid) const {
  if (pid.pid2.size() != group_->scalar_bytes()) {
    throw ProtocolError(ErrorCode::kMalformedEncoding, "PID2 has wrong width");
  }
  if (!pid.pid1.valid() || pid.pid1.is_identity()) {
    throw ProtocolError(ErrorCode::kIdentityPoint, "PID1 is the identity");
  }
  Bytes out = pid.pid2;
  xor_into(out, mask(pid.pid1, pid.validity));
  return out;
}

RealIdentity TraceAuthority::trace(const PseudoId& pid) const {
  Bytes full = unmask(pid);
  const auto split = full.end() - static_cast<std::ptrdiff_t>(id_len_);
  if (std::any_of(full.begin(), split, [](std::uint8_t b) { return b != 0; })) {
    throw ProtocolError(ErrorCode::kForeignPseudoId, "pseudo-ID was not issued by this authority");
  }
  return RealIdentity{Bytes(split, full.end())};
}

}  // namespace v2isc
