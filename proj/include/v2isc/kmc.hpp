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

struct MasterKey {
  Scalar secret;  // s
  Point public_key;  // sP
};

// Certificateless partial key: Y = kP, y = k + s * H1(PID, Y).
struct PartialKey {
  Point public_part;
  Scalar private_part;
};

// Key Management Center. Honest-but-curious; delivery to vehicles and RSUs
// is a direct call standing in for the secure channel.
class KeyManagementCenter {
 public:
  static KeyManagementCenter setup(const Group& g, Rng& rng);

  const Group& group() const { return *group_; }
  const Point& master_public() const { return key_.public_key; }
  const MasterKey& master_key() const { return key_; }

  PartialKey issue_partial_key(const PseudoId& pid, Rng& rng) const;

  // Throws kInvalidPoint for an identity or foreign-group key.
  RsuCertificate issue_rsu_cert(ByteView rsu_id, const Point& rsu_public, Rng& rng) const;

 private:
  KeyManagementCenter(const Group& g, MasterKey key) : group_(&g), key_(std::move(key)) {}

  const Group* group_;
  MasterKey key_;
};

// y P == Y + H1(PID, Y) P_pub
bool partial_key_valid(const Point& master_public, const PseudoId& pid, const PartialKey& key);

bool verify_rsu_cert(const Point& master_public, const RsuCertificate& cert);

}  // namespace v2isc
