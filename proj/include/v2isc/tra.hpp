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

#include "v2isc/messages.hpp"
#include "v2isc/params.hpp"

namespace v2isc {

struct TraceKey {
  Scalar secret;  // beta
  Point public_key;  // beta P
};

// Vehicle half of pseudonym generation: lambda stays on the vehicle.
struct PseudonymRequest {
  Scalar lambda;
  Point pid1;  // lambda P
};

PseudonymRequest vehicle_pid_request(const Group& g, Rng& rng);

// Trace Authority. PID2 = pad(RID) XOR H1("pid", beta PID1, PID1, T), with RID
// zero-left-padded to the scalar width; the zero padding is re-checked on
// trace to detect pseudonyms this authority did not issue.
class TraceAuthority {
 public:
  static TraceAuthority setup(const Group& g, std::size_t id_len, Rng& rng);

  const Point& trace_public() const { return key_.public_key; }
  const TraceKey& trace_key() const { return key_; }
  std::size_t id_len() const { return id_len_; }

  // Throws kIdentityPoint for an identity PID1, kInvalidArgument for a RID of
  // the wrong length.
  PseudoId issue_pid(const RealIdentity& rid, const Point& pid1, ValidityPeriod validity) const;

  // Throws kForeignPseudoId when the unmasked padding is not all zero.
  RealIdentity trace(const PseudoId& pid) const;

  // PID2 XOR mask at full width, without the padding check.
  Bytes unmask(const PseudoId& pid) const;

 private:
  TraceAuthority(const Group& g, std::size_t id_len, TraceKey key)
      : group_(&g), id_len_(id_len), key_(std::move(key)) {}

  Bytes mask(const Point& pid1, ValidityPeriod validity) const;

  const Group* group_;
  std::size_t id_len_;
  TraceKey key_;
};

}  // namespace v2isc
