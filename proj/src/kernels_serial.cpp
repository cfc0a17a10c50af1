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

#include "v2isc/kernels.hpp"

#include "v2isc/scheme.hpp"

namespace v2isc::kernels {

MessageHashes hash_message(const Group& g, ByteView cert_encoding, const SigncryptedMessage& msg) {
  return MessageHashes{
      partial_key_hash(g, msg.pid, msg.Y),
      identity_hash(g, msg.pid, msg.Y, msg.L, msg.tt),
      ciphertext_hash(g, msg.c, msg.X, cert_encoding, msg.tt),
  };
}

Bytes decrypt_message(const SystemParams& params, const Scalar& rsu_secret,
                      const SigncryptedMessage& msg) {
  if (msg.c.size() != params.message_bytes()) {
    throw ProtocolError(ErrorCode::kMalformedEncoding, "ciphertext has wrong length");
  }
  const Point shared = rsu_secret * msg.X;
  if (shared.is_identity()) throw ProtocolError(ErrorCode::kIdentityPoint, "malformed X");
  Bytes m = msg.c;
  xor_into(m, h2(shared, params.message_bits));
  return m;
}

std::vector<MessageHashes> message_hashes_serial(const Group& g, ByteView cert_encoding,
                                                 std::span<const SigncryptedMessage> batch) {
  std::vector<MessageHashes> out;
  out.reserve(batch.size());
  for (const auto& msg : batch) out.push_back(hash_message(g, cert_encoding, msg));
  return out;
}

std::vector<Bytes> decrypt_serial(const SystemParams& params, const Scalar& rsu_secret,
                                  std::span<const SigncryptedMessage> batch) {
  std::vector<Bytes> out;
  out.reserve(batch.size());
  for (const auto& msg : batch) out.push_back(decrypt_message(params, rsu_secret, msg));
  return out;
}

}  // namespace v2isc::kernels
