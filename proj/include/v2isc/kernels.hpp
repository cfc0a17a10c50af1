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

// Per-message work on the RSU side. Each message is independent, so every
// kernel has an OpenMP version and a serial reference that tests and the
// kernel benchmark compare it against. Both produce identical outputs and
// identical operation counts; counts from worker threads are merged into the
// caller's active CounterScope.

#pragma once

#include <span>
#include <vector>

#include "v2isc/messages.hpp"
#include "v2isc/params.hpp"

namespace v2isc::kernels {

enum class Policy { kSerial, kParallel };

// Q_i, h3_i, h4_i for one message.
struct MessageHashes {
  Scalar q;
  Scalar h3;
  Scalar h4;
};

std::vector<MessageHashes> message_hashes_serial(const Group& g, ByteView cert_encoding,
                                                 std::span<const SigncryptedMessage> batch);
std::vector<MessageHashes> message_hashes_parallel(const Group& g, ByteView cert_encoding,
                                                   std::span<const SigncryptedMessage> batch);

inline std::vector<MessageHashes> message_hashes(Policy p, const Group& g, ByteView cert_encoding,
                                                 std::span<const SigncryptedMessage> batch) {
  return p == Policy::kSerial ? message_hashes_serial(g, cert_encoding, batch)
                              : message_hashes_parallel(g, cert_encoding, batch);
}

// m_i = c_i XOR H2(gamma X_i).
std::vector<Bytes> decrypt_serial(const SystemParams& params, const Scalar& rsu_secret,
                                  std::span<const SigncryptedMessage> batch);
std::vector<Bytes> decrypt_parallel(const SystemParams& params, const Scalar& rsu_secret,
                                    std::span<const SigncryptedMessage> batch);

inline std::vector<Bytes> decrypt(Policy p, const SystemParams& params, const Scalar& rsu_secret,
                                  std::span<const SigncryptedMessage> batch) {
  return p == Policy::kSerial ? decrypt_serial(params, rsu_secret, batch)
                              : decrypt_parallel(params, rsu_secret, batch);
}

// Single-message bodies shared by both versions.
MessageHashes hash_message(const Group& g, ByteView cert_encoding, const SigncryptedMessage& msg);
Bytes decrypt_message(const SystemParams& params, const Scalar& rsu_secret,
                      const SigncryptedMessage& msg);

}  // namespace v2isc::kernels
