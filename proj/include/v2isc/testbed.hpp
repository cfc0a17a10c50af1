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
#include <optional>
#include <string_view>

#include "v2isc/rsu.hpp"
#include "v2isc/vehicle.hpp"

namespace v2isc {

// Start of the simulated clock used by deterministic runs.
inline constexpr Timestamp kEpoch{1'760'000'000};

// A complete deployment (KMC, TRA, one RSU) driven by one seeded generator.
// Used by the simulator, the benchmarks and the test suites.
class Testbed {
 public:
  struct Options {
    std::string_view curve_id = "P-256";
    std::size_t message_bits = kDefaultMessageBits;
    std::size_t id_len = kDefaultIdLen;
  };

  explicit Testbed(std::uint64_t seed) : Testbed(seed, Options{}) {}
  Testbed(std::uint64_t seed, const Options& options);

  const SystemParams& params() const { return params_; }
  const Group& group() const { return params_.g(); }
  const KeyManagementCenter& kmc() const { return *kmc_; }
  const TraceAuthority& tra() const { return *tra_; }
  const RsuKeys& rsu() const { return rsu_; }
  Rng& rng() { return rng_; }

  Timestamp now() const { return kEpoch; }
  // One day either side of now().
  ValidityPeriod default_validity() const;

  RealIdentity random_identity();
  RealIdentity random_identity(Rng& rng) const;
  Bytes random_message();
  Bytes random_message(Rng& rng) const;

  // Pseudonym request, issuance and registration.
  VehicleKeys enroll(const RealIdentity& rid);
  VehicleKeys enroll(const RealIdentity& rid, Rng& rng) const;

  BroadcastPacket beacon();
  BroadcastPacket beacon(Timestamp at, Rng& rng) const;

  struct Batch {
    BroadcastPacket beacon;
    std::vector<VehicleKeys> vehicles;
    std::vector<Bytes> plaintexts;
    std::vector<SigncryptedMessage> messages;
  };
  // n distinct vehicles each signcrypting one random report under one beacon.
  Batch honest_batch(std::size_t n);

 private:
  SeededRng rng_;
  SystemParams params_;
  std::optional<KeyManagementCenter> kmc_;
  std::optional<TraceAuthority> tra_;
  RsuKeys rsu_;
};

}  // namespace v2isc
