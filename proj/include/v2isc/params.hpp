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

#include <cstdint>

#include "v2isc/group.hpp"

namespace v2isc {

inline constexpr std::size_t kDefaultMessageBits = 256;
inline constexpr std::size_t kDefaultIdLen = 16;
inline constexpr std::int64_t kDefaultFreshnessWindow = 300;

// Public parameters every party stores before registering.
struct SystemParams {
  const Group* group = nullptr;
  Point master_public;  // sP, from the KMC
  Point trace_public;   // beta P, from the TRA
  std::size_t message_bits = kDefaultMessageBits;
  std::size_t id_len = kDefaultIdLen;

  const Group& g() const { return *group; }
  std::size_t message_bytes() const { return message_bits / 8; }

  // Throws kInvalidParams unless: both public keys are non-identity points of
  // `group`, message_bits is a positive multiple of 8, and id_len * 8 is
  // below the bit length of q.
  void validate() const;
};

}  // namespace v2isc
