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

#include "v2isc/rsu.hpp"

#include <algorithm>

#include "v2isc/scheme.hpp"
#include "v2isc/wire.hpp"

namespace v2isc {

RsuKeys accept_certificate(const SystemParams& params, ByteView rsu_id, Scalar secret,
                           RsuCertificate cert) {
  Point pub = params.g().mul_generator(secret);
  const bool binds = cert.rsu_public == pub &&
                     Bytes(rsu_id.begin(), rsu_id.end()) == cert.rsu_id;
  if (!binds || !verify_rsu_cert(params.master_public, cert)) {
    throw ProtocolError(ErrorCode::kCertificateInvalid, "RSU certificate rejected");
  }
  return RsuKeys{Bytes(rsu_id.begin(), rsu_id.end()), std::move(secret), std::move(pub),
                 std::move(cert)};
}

RsuKeys rsu_register(const SystemParams& params, ByteView rsu_id, const KeyManagementCenter& kmc,
                     Rng& rng) {
  Scalar gamma = Scalar::random_nonzero(params.g(), rng);
  Point pub = params.g().mul_generator(gamma);
  RsuCertificate cert = kmc.issue_rsu_cert(rsu_id, pub, rng);
  return accept_certificate(params, rsu_id, std::move(gamma), std::move(cert));
}

BroadcastPacket make_broadcast(const SystemParams& params, const RsuKeys& rsu, Timestamp issued_at,
                               Rng& rng) {
  BroadcastPacket pkt;
  pkt.cert = rsu.cert;
  pkt.eta = Scalar::random_nonzero(params.g(), rng);
  pkt.issued_at = issued_at;
  pkt.sig = schnorr_sign(params.g(), rsu.secret, pkt.signed_message(), rng);
  return pkt;
}

// ---- replay cache ----

std::string ReplayCache::key(const SigncryptedMessage& msg) {
  Encoder e;
  msg.pid.encode_to(e);
  e.timestamp(msg.tt);
  const auto& b = e.data();
  return std::string(b.begin(), b.end());
}

bool ReplayCache::try_reserve(const std::string& key) {
  std::lock_guard lock(mu_);
  if (live_.contains(key)) return false;
  const auto gen = next_generation_++;
  live_.emplace(key, gen);
  order_.emplace_back(key, gen);
  while (live_.size() > capacity_ && !order_.empty()) {
    auto [old, old_gen] = std::move(order_.front());
    order_.pop_front();
    if (auto it = live_.find(old); it != live_.end() && it->second == old_gen) live_.erase(it);
  }
  return true;
}

void ReplayCache::release(const std::string& key) {
  std::lock_guard lock(mu_);
  live_.erase(key);
}

bool ReplayCache::contains(const std::string& key) const {
  std::lock_guard lock(mu_);
  return live_.contains(key);
}

std::size_t ReplayCache::size() const {
  std::lock_guard lock(mu_);
  return live_.size();
}

// ---- verification ----

std::string_view to_string(MessageStatus s) {
  switch (s) {
    case MessageStatus::kAccepted: return "accepted";
    case MessageStatus::kBatchRejected: return "batch_rejected";
    case MessageStatus::kExpiredPseudonym: return "expired_pseudonym";
    case MessageStatus::kStaleTimestamp: return "stale_timestamp";
    case MessageStatus::kReplay: return "replay";
    case MessageStatus::kInvalidPoint: return "invalid_point";
  }
  return "unknown";
}

std::size_t BatchResult::count(MessageStatus s) const {
  return static_cast<std::size_t>(std::count(status.begin(), status.end(), s));
}

bool aggregate_verify(const SystemParams& params, const RsuKeys& rsu, const Scalar& eta,
                      std::span<const SigncryptedMessage> batch, kernels::Policy policy) {
  if (batch.empty()) throw ProtocolError(ErrorCode::kEmptyBatch, "empty batch");
  const Group& g = params.g();
  const Bytes cert_encoding = to_wire(rsu.cert);
  const auto hashes = kernels::message_hashes(policy, g, cert_encoding, batch);

  Scalar sum_h(g, 0);  // sum (h3_i - h4_i)
  Scalar sum_q(g, 0);
  Scalar sum_t(g, 0);
  Point sum_x = g.identity();
  Point sum_y = g.identity();
  Point sum_l = g.identity();
  for (std::size_t i = 0; i < batch.size(); ++i) {
    sum_h += hashes[i].h3 - hashes[i].h4;
    sum_q += hashes[i].q;
    sum_t += batch[i].t;
    sum_x += batch[i].X;
    sum_y += batch[i].Y;
    sum_l += batch[i].L;
  }

  // Z = H1(gamma eta P)^-1 (X - tP) - L, and
  // V1 - V2 = eta sum(h3 - h4) P + (sum Q) P_pub + sum Y + 2 sum L
  //           - H1(gamma eta P)^-1 (X - tP).
  const Scalar inv = beacon_hash(g, g.mul_generator(rsu.secret * eta)).inverse();
  const Point hash_key_part = inv * (sum_x - g.mul_generator(sum_t));
  const Point diff = g.mul_generator(eta * sum_h) + sum_q * params.master_public + sum_y + sum_l +
                     sum_l - hash_key_part;
  return diff.is_identity();
}

Bytes decrypt_one(const SystemParams& params, const RsuKeys& rsu, const SigncryptedMessage& msg) {
  return kernels::decrypt_message(params, rsu.secret, msg);
}

BatchResult batch_verify(const SystemParams& params, const RsuKeys& rsu, const Scalar& eta,
                         std::span<const SigncryptedMessage> batch, Timestamp now,
                         const VerifyOptions& options) {
  if (batch.empty()) throw ProtocolError(ErrorCode::kEmptyBatch, "empty batch");

  BatchResult result;
  result.status.assign(batch.size(), MessageStatus::kBatchRejected);
  result.plaintexts.resize(batch.size());

  std::vector<SigncryptedMessage> included;
  std::vector<std::size_t> included_at;
  std::vector<std::string> reserved;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const auto& msg = batch[i];
    const auto age = now.seconds - msg.tt.seconds;
    if (msg.X.is_identity() || msg.Y.is_identity() || msg.L.is_identity() ||
        msg.c.size() != params.message_bytes()) {
      result.status[i] = MessageStatus::kInvalidPoint;
    } else if (!check_pid_validity(msg.pid, msg.tt)) {
      result.status[i] = MessageStatus::kExpiredPseudonym;
    } else if (age > options.freshness_window || -age > options.freshness_window) {
      result.status[i] = MessageStatus::kStaleTimestamp;
    } else if (options.replay_cache != nullptr) {
      auto key = ReplayCache::key(msg);
      if (!options.replay_cache->try_reserve(key)) {
        result.status[i] = MessageStatus::kReplay;
        continue;
      }
      reserved.push_back(std::move(key));
    }
    if (result.status[i] == MessageStatus::kBatchRejected) {
      included.push_back(msg);
      included_at.push_back(i);
    }
  }
  if (included.empty()) return result;

  {
    CounterScope scope(result.verify_counts);
    result.accepted = aggregate_verify(params, rsu, eta, included, options.policy);
  }
  if (!result.accepted) {
    for (const auto& key : reserved) options.replay_cache->release(key);
    return result;
  }

  std::vector<Bytes> plain;
  {
    CounterScope scope(result.decrypt_counts);
    plain = kernels::decrypt(options.policy, params, rsu.secret, included);
  }
  for (std::size_t j = 0; j < included.size(); ++j) {
    result.status[included_at[j]] = MessageStatus::kAccepted;
    result.plaintexts[included_at[j]] = std::move(plain[j]);
  }
  return result;
}

namespace {

void bisect(const SystemParams& params, const RsuKeys& rsu, const Scalar& eta,
            std::span<const SigncryptedMessage> batch, std::size_t offset,
            kernels::Policy policy, std::vector<std::size_t>& bad) {
  if (batch.empty() || aggregate_verify(params, rsu, eta, batch, policy)) return;
  if (batch.size() == 1) {
    bad.push_back(offset);
    return;
  }
  const std::size_t half = batch.size() / 2;
  bisect(params, rsu, eta, batch.first(half), offset, policy, bad);
  bisect(params, rsu, eta, batch.subspan(half), offset + half, policy, bad);
}

}  // namespace

std::vector<std::size_t> isolate_bad_signers(const SystemParams& params, const RsuKeys& rsu,
                                             const Scalar& eta,
                                             std::span<const SigncryptedMessage> batch,
                                             kernels::Policy policy) {
  std::vector<std::size_t> bad;
  bisect(params, rsu, eta, batch, 0, policy, bad);
  return bad;
}

}  // namespace v2isc
