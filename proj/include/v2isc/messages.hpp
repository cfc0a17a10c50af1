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

// Records exchanged between parties. Their byte layouts live in wire.hpp.

#pragma once

#include "v2isc/encoding.hpp"
#include "v2isc/schnorr.hpp"

namespace v2isc {

// Inclusive [start, end].
struct ValidityPeriod {
  Timestamp start;
  Timestamp end;
  bool contains(Timestamp t) const { return start <= t && t <= end; }
  bool operator==(const ValidityPeriod&) const = default;
};

// <PID1, PID2, T>. PID2 has the group's scalar width.
struct PseudoId {
  Point pid1;
  Bytes pid2;
  ValidityPeriod validity;

  // Appends the pseudo-ID wire layout; also its hash-input form.
  void encode_to(Encoder& e) const;
  bool operator==(const PseudoId&) const = default;
};

bool check_pid_validity(const PseudoId& pid, Timestamp now);

struct RealIdentity {
  Bytes rid;
  bool operator==(const RealIdentity&) const = default;
};

struct RsuCertificate {
  Bytes rsu_id;
  Point rsu_public;
  SchnorrSignature sig;

  // encode(ID_R) || encode(Y_R): the bytes covered by `sig`.
  Bytes signed_message() const;
  void encode_to(Encoder& e) const;
};

// Periodic RSU beacon.
struct BroadcastPacket {
  RsuCertificate cert;
  Scalar eta;
  Timestamp issued_at;
  SchnorrSignature sig;

  // encode(eta) || encode(tt_R)
  Bytes signed_message() const;
};

// Signcrypted traffic report sigma = <t, c, X, Y, L, PID, tt>.
struct SigncryptedMessage {
  Scalar t;
  Bytes c;
  Point X;
  Point Y;
  Point L;
  PseudoId pid;
  Timestamp tt;
};

}  // namespace v2isc
