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

// Wire formats, fixed field order:
//
//   pseudo-ID   encode(PID1) || PID2 || encode(T.start) || encode(T.end)
//   cert        encode(ID_R) || encode(Y_R) || encode(R) || encode(s)
//   beacon      cert || encode(eta) || encode(tt_R) || encode(R) || encode(s)
//   sigma       encode(t) || c || encode(X) || encode(Y) || encode(L)
//               || pseudo-ID || encode(tt)
//
// PID2 and c are untagged fixed-width fields (scalar width and l_m / 8).

#pragma once

#include <string>
#include <vector>

#include "v2isc/messages.hpp"
#include "v2isc/params.hpp"

namespace v2isc {

Bytes to_wire(const PseudoId& pid);
Bytes to_wire(const RsuCertificate& cert);
Bytes to_wire(const BroadcastPacket& pkt);
Bytes to_wire(const SigncryptedMessage& msg);

PseudoId pseudo_id_from_wire(const SystemParams& params, ByteView in);
RsuCertificate certificate_from_wire(const SystemParams& params, ByteView in);
BroadcastPacket broadcast_from_wire(const SystemParams& params, ByteView in);
SigncryptedMessage signcrypted_from_wire(const SystemParams& params, ByteView in);

// Readers for a field sequence embedded in a larger record.
PseudoId read_pseudo_id(const SystemParams& params, Decoder& d);
RsuCertificate read_certificate(Decoder& d);

// Byte range of one field inside the sigma wire format.
struct WireField {
  std::string name;
  std::size_t offset;
  std::size_t length;
};

// Fields of sigma in wire order: t, c, X, Y, L, PID1, PID2, T.start, T.end, tt.
std::vector<WireField> signcrypted_layout(const SystemParams& params);

}  // namespace v2isc
