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

#include "v2isc/testbed.hpp"

namespace v2isc {

namespace {
constexpr std::string_view kRsuId = "RSU-0001";
}

Testbed::Testbed(std::uint64_t seed, const Options& options) : rng_(seed) {
  const Group& g = Group::named(options.curve_id);
  kmc_.emplace(KeyManagementCenter::setup(g, rng_));
  tra_.emplace(TraceAuthority::setup(g, options.id_len, rng_));
  params_.group = &g;
  params_.master_public = kmc_->master_public();
  params_.trace_public = tra_->trace_public();
  params_.message_bits = options.message_bits;
  params_.id_len = options.id_len;
  params_.validate();
  rsu_ = rsu_register(
      params_, ByteView(reinterpret_cast<const std::uint8_t*>(kRsuId.data()), kRsuId.size()),
      *kmc_, rng_);
}

ValidityPeriod Testbed::default_validity() const {
  return {Timestamp{kEpoch.seconds - 86'400}, Timestamp{kEpoch.seconds + 86'400}};
}

RealIdentity Testbed::random_identity() { return random_identity(rng_); }

RealIdentity Testbed::random_identity(Rng& rng) const {
  RealIdentity rid{Bytes(params_.id_len)};
  rng.fill(rid.rid);
  return rid;
}

Bytes Testbed::random_message() { return random_message(rng_); }

Bytes Testbed::random_message(Rng& rng) const {
  Bytes m(params_.message_bytes());
  rng.fill(m);
  return m;
}

VehicleKeys Testbed::enroll(const RealIdentity& rid) { return enroll(rid, rng_); }

VehicleKeys Testbed::enroll(const RealIdentity& rid, Rng& rng) const {
  auto request = vehicle_pid_request(group(), rng);
  PseudoId pid = tra_->issue_pid(rid, request.pid1, default_validity());
  return register_vehicle(params_, pid, *kmc_, rng);
}

BroadcastPacket Testbed::beacon() { return beacon(now(), rng_); }

BroadcastPacket Testbed::beacon(Timestamp at, Rng& rng) const {
  return make_broadcast(params_, rsu_, at, rng);
}

Testbed::Batch Testbed::honest_batch(std::size_t n) {
  Batch b;
  b.beacon = beacon();
  b.vehicles.reserve(n);
  b.plaintexts.reserve(n);
  b.messages.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    b.vehicles.push_back(enroll(random_identity()));
    b.plaintexts.push_back(random_message());
    b.messages.push_back(
        signcrypt(params_, b.vehicles.back(), b.beacon, b.plaintexts.back(), now(), rng_));
  }
  return b;
}

}  // namespace v2isc
