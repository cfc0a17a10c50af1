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

// In-process V2I channel: concurrent vehicle producers, one RSU consumer.
//
// The run proceeds in rounds, one beacon per round. In each round every
// vehicle signcrypts one report on a producer thread and stamps it with a
// simulated arrival time drawn from its own seeded stream. The consumer
// drains the round in (arrival, id) order, lets the adversary act, cuts
// batches on the simulated clock and verifies them. Nothing observable
// depends on thread scheduling, so a seed fixes the whole report apart from
// wall-clock timings.

#pragma once

#include <algorithm>
#include <cstdint>
#include <mutex>
#include <string>
#include <vector>

#include "v2isc/testbed.hpp"

namespace v2isc::sim {

enum class Adversary { kNone, kTamper, kReplay };

struct Scenario {
  std::size_t n_vehicles = 10;
  std::size_t reports_per_vehicle = 1;
  std::int64_t batch_window_ms = 100;
  std::size_t batch_max = 100;
  Adversary adversary = Adversary::kNone;
  double adversary_rate = 0.0;
  // Replayed copies get tt + 1 instead of an exact duplicate.
  bool replay_modify_tt = false;
  std::uint64_t seed = 1;
  std::size_t producers = 4;
  kernels::Policy policy = kernels::Policy::kParallel;

  // Throws kInvalidArgument for zero counts or a rate outside [0, 1].
  void validate() const;
};

struct SimReport {
  std::size_t batches_processed = 0;
  std::size_t messages_sent = 0;  // everything the RSU received, injected copies included
  std::size_t messages_accepted = 0;
  std::size_t messages_rejected = 0;
  std::size_t rejected_replay = 0;
  std::size_t rejected_precheck = 0;
  std::size_t bad_signers_isolated = 0;
  std::size_t plaintext_mismatches = 0;
  std::vector<std::uint64_t> isolated_ids;
  std::vector<std::uint64_t> tampered_ids;  // ground truth from the adversary
  std::vector<std::uint64_t> replayed_ids;  // ids of injected copies

  double registration_ms = 0;
  double signcrypt_ms = 0;
  double verify_ms = 0;
  double isolate_ms = 0;

  // key=value lines; wall-clock fields carry a time_ prefix.
  std::string to_text() const;
  // Equality of everything except wall-clock timings.
  bool same_outcome(const SimReport& o) const;
};

SimReport run_scenario(const Scenario& sc);

// Runs a replay scenario. Throws kInvalidArgument unless the adversary is
// kReplay with a positive rate.
SimReport replay_attack_check(const Scenario& sc);

// Producer-side queue; the consumer takes everything in key order.
template <typename T>
class OrderedQueue {
 public:
  void push(T item) {
    std::lock_guard lock(mu_);
    items_.push_back(std::move(item));
  }
  // Removes and returns all items sorted by operator<.
  std::vector<T> drain_sorted() {
    std::vector<T> out;
    {
      std::lock_guard lock(mu_);
      out.swap(items_);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::mutex mu_;
  std::vector<T> items_;
};

}  // namespace v2isc::sim
