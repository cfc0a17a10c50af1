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
#include <deque>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

#include "v2isc/kernels.hpp"
#include "v2isc/kmc.hpp"

namespace v2isc {

struct RsuKeys {
  Bytes rsu_id;
  Scalar secret;     // gamma, also written y_R
  Point public_key;  // Y_R = gamma P
  RsuCertificate cert;
};

// Picks gamma and obtains a certificate from the KMC.
RsuKeys rsu_register(const SystemParams& params, ByteView rsu_id, const KeyManagementCenter& kmc,
                     Rng& rng);

// Local check of a delivered certificate. Throws kCertificateInvalid unless the
// certificate verifies under P_pub and binds this RSU's id and gamma P.
RsuKeys accept_certificate(const SystemParams& params, ByteView rsu_id, Scalar secret,
                           RsuCertificate cert);

// Beacon with a fresh public eta signed under gamma.
BroadcastPacket make_broadcast(const SystemParams& params, const RsuKeys& rsu, Timestamp issued_at,
                               Rng& rng);

// Bounded record of recently seen (PID, tt) pairs. Thread-safe. Oldest
// entries are evicted first once `capacity` is reached.
class ReplayCache {
 public:
  explicit ReplayCache(std::size_t capacity = 1 << 16) : capacity_(capacity) {}

  static std::string key(const SigncryptedMessage& msg);

  // True if `key` was absent and is now recorded.
  bool try_reserve(const std::string& key);
  void release(const std::string& key);
  bool contains(const std::string& key) const;
  std::size_t size() const;

 private:
  std::size_t capacity_;
  mutable std::mutex mu_;
  std::uint64_t next_generation_ = 0;
  std::unordered_map<std::string, std::uint64_t> live_;
  std::deque<std::pair<std::string, std::uint64_t>> order_;
};

enum class MessageStatus {
  kAccepted,
  kBatchRejected,     // took part in an aggregate that failed
  kExpiredPseudonym,  // PID not valid at tt
  kStaleTimestamp,    // |now - tt| beyond the freshness window
  kReplay,            // (PID, tt) already seen
  kInvalidPoint,      // X, Y or L is the identity, or c has the wrong length
};

std::string_view to_string(MessageStatus s);

struct BatchResult {
  bool accepted = false;
  std::vector<MessageStatus> status;  // one per input message
  // One slot per input message; filled for every included message on accept.
  std::vector<std::optional<Bytes>> plaintexts;
  OpCounter verify_counts;
  OpCounter decrypt_counts;

  std::size_t count(MessageStatus s) const;
};

struct VerifyOptions {
  std::int64_t freshness_window = kDefaultFreshnessWindow;
  ReplayCache* replay_cache = nullptr;
  kernels::Policy policy = kernels::Policy::kParallel;
};

// Pre-checks each message, aggregates the survivors, decides V1 == V2 and on
// accept decrypts every included message. Throws kEmptyBatch for an empty
// input; a failed check is reported through the result, never thrown.
BatchResult batch_verify(const SystemParams& params, const RsuKeys& rsu, const Scalar& eta,
                         std::span<const SigncryptedMessage> batch, Timestamp now,
                         const VerifyOptions& options = {});

// The aggregate check alone: V1 - V2 == O, evaluated with 5 scalar
// multiplications and 3n + 1 H1 evaluations for any n >= 1.
bool aggregate_verify(const SystemParams& params, const RsuKeys& rsu, const Scalar& eta,
                      std::span<const SigncryptedMessage> batch,
                      kernels::Policy policy = kernels::Policy::kParallel);

Bytes decrypt_one(const SystemParams& params, const RsuKeys& rsu, const SigncryptedMessage& msg);

// Bisects a rejected batch, re-running aggregate_verify on halves. Returns the
// indices of messages that fail on their own, ascending.
std::vector<std::size_t> isolate_bad_signers(const SystemParams& params, const RsuKeys& rsu,
                                             const Scalar& eta,
                                             std::span<const SigncryptedMessage> batch,
                                             kernels::Policy policy = kernels::Policy::kParallel);

}  // namespace v2isc
