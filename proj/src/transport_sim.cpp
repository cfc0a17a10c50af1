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

#include "v2isc/transport_sim.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <random>
#include <sstream>
#include <thread>
#include <tuple>

namespace v2isc::sim {

namespace {

using Clock = std::chrono::steady_clock;

struct InFlight {
  std::int64_t arrival_ms = 0;
  std::uint64_t id = 0;
  SigncryptedMessage msg;

  bool operator<(const InFlight& o) const {
    return std::tie(arrival_ms, id) < std::tie(o.arrival_ms, o.id);
  }
};

// splitmix64 finalizer: independent child seeds from one scenario seed.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Calls work(v) for every v in [0, n), vehicle v on thread v % producers.
template <typename Work>
void run_producers(std::size_t producers, std::size_t n, Work&& work) {
  std::mutex error_mu;
  std::exception_ptr error;
  std::vector<std::thread> threads;
  const std::size_t count = std::min(producers, n);
  threads.reserve(count);
  for (std::size_t p = 0; p < count; ++p) {
    threads.emplace_back([&, p] {
      try {
        for (std::size_t v = p; v < n; v += count) work(v);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

void tamper(SigncryptedMessage& msg, const Group& g, std::mt19937_64& adv) {
  switch (adv() % 4) {
    case 0:
      msg.t += Scalar(g, 1);
      break;
    case 1:
      msg.c[adv() % msg.c.size()] ^= static_cast<std::uint8_t>(1u << (adv() % 8));
      break;
    case 2:
      msg.X += g.generator();
      break;
    default:
      msg.L += g.generator();
      break;
  }
}

bool is_precheck(MessageStatus s) {
  return s == MessageStatus::kInvalidPoint || s == MessageStatus::kExpiredPseudonym ||
         s == MessageStatus::kStaleTimestamp;
}

template <typename T>
std::string join(const std::vector<T>& v) {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  return out.str();
}

}  // namespace

void Scenario::validate() const {
  auto fail = [](const char* why) { throw ProtocolError(ErrorCode::kInvalidArgument, why); };
  if (n_vehicles == 0) fail("scenario needs at least one vehicle");
  if (reports_per_vehicle == 0) fail("scenario needs at least one report per vehicle");
  if (batch_window_ms <= 0 || batch_max == 0) fail("batch trigger must be positive");
  if (producers == 0) fail("scenario needs at least one producer");
  if (!(adversary_rate >= 0.0 && adversary_rate <= 1.0)) fail("adversary rate outside [0, 1]");
}

SimReport run_scenario(const Scenario& sc) {
  sc.validate();
  SimReport report;

  Testbed bed(stream_seed(sc.seed, 0));
  const SystemParams& params = bed.params();
  const std::size_t n = sc.n_vehicles;
  const std::uint64_t total = n * sc.reports_per_vehicle;

  std::vector<SeededRng> rngs;
  rngs.reserve(n);
  for (std::size_t v = 0; v < n; ++v) rngs.emplace_back(stream_seed(sc.seed, 1 + v));

  auto t0 = Clock::now();
  std::vector<VehicleKeys> vehicles(n);
  run_producers(sc.producers, n, [&](std::size_t v) {
    vehicles[v] = bed.enroll(bed.random_identity(rngs[v]), rngs[v]);
  });
  report.registration_ms = ms_since(t0);

  // Plaintext each id was built from; injected copies inherit their origin's.
  std::vector<Bytes> sent(total);
  std::mt19937_64 adv(stream_seed(sc.seed, ~0ULL));
  std::bernoulli_distribution strike(sc.adversary_rate);
  std::uint64_t next_injected = total;
  ReplayCache cache;
  const VerifyOptions options{kDefaultFreshnessWindow, &cache, sc.policy};

  for (std::size_t round = 0; round < sc.reports_per_vehicle; ++round) {
    const Timestamp tt{kEpoch.seconds + static_cast<std::int64_t>(round)};
    const std::int64_t round_ms = static_cast<std::int64_t>(round) * 1000;
    const BroadcastPacket beacon = bed.beacon(tt, bed.rng());

    OrderedQueue<InFlight> queue;
    t0 = Clock::now();
    run_producers(sc.producers, n, [&](std::size_t v) {
      auto& rng = rngs[v];
      if (!validate_broadcast(beacon, params.master_public, tt)) {
        throw ProtocolError(ErrorCode::kCertificateInvalid, "vehicle rejected the beacon");
      }
      const std::uint64_t id = round * n + v;
      sent[id] = bed.random_message(rng);
      std::uint8_t jitter[2];
      rng.fill(jitter);
      const std::int64_t arrival = round_ms + ((jitter[0] << 8 | jitter[1]) % 900);
      queue.push(InFlight{arrival, id, signcrypt(params, vehicles[v], beacon, sent[id], tt, rng)});
    });
    report.signcrypt_ms += ms_since(t0);

    auto items = queue.drain_sorted();
    if (sc.adversary == Adversary::kTamper) {
      for (auto& item : items) {
        if (!strike(adv)) continue;
        tamper(item.msg, params.g(), adv);
        report.tampered_ids.push_back(item.id);
      }
    } else if (sc.adversary == Adversary::kReplay) {
      const std::size_t originals = items.size();
      for (std::size_t i = 0; i < originals; ++i) {
        if (!strike(adv)) continue;
        InFlight copy = items[i];
        copy.id = next_injected++;
        copy.arrival_ms += 1 + static_cast<std::int64_t>(adv() % 200);
        if (sc.replay_modify_tt) copy.msg.tt.seconds += 1;
        sent.push_back(sent[items[i].id]);
        report.replayed_ids.push_back(copy.id);
        items.push_back(std::move(copy));
      }
      std::sort(items.begin(), items.end());
    }
    report.messages_sent += items.size();

    // Batch cut: window from the first arrival, or batch_max messages.
    for (std::size_t begin = 0; begin < items.size();) {
      std::size_t end = begin;
      while (end < items.size() && end - begin < sc.batch_max &&
             items[end].arrival_ms < items[begin].arrival_ms + sc.batch_window_ms) {
        ++end;
      }
      std::vector<SigncryptedMessage> batch;
      for (std::size_t i = begin; i < end; ++i) batch.push_back(items[i].msg);
      const Timestamp now{kEpoch.seconds + items[end - 1].arrival_ms / 1000};

      // Aggregate failures are only final when `final_attempt` is set; on the
      // first attempt those messages go on to isolation.
      auto settle = [&](const BatchResult& res, const std::vector<std::uint64_t>& ids,
                        bool final_attempt) {
        for (std::size_t i = 0; i < ids.size(); ++i) {
          const auto s = res.status[i];
          if (s == MessageStatus::kAccepted) {
            ++report.messages_accepted;
            if (*res.plaintexts[i] != sent[ids[i]]) ++report.plaintext_mismatches;
          } else if (s == MessageStatus::kReplay) {
            ++report.rejected_replay;
            ++report.messages_rejected;
          } else if (is_precheck(s)) {
            ++report.rejected_precheck;
            ++report.messages_rejected;
          } else if (final_attempt) {
            ++report.messages_rejected;
          }
        }
      };

      std::vector<std::uint64_t> ids;
      for (std::size_t i = begin; i < end; ++i) ids.push_back(items[i].id);

      t0 = Clock::now();
      BatchResult res = batch_verify(params, bed.rsu(), beacon.eta, batch, now, options);
      report.verify_ms += ms_since(t0);
      ++report.batches_processed;

      if (res.accepted) {
        settle(res, ids, true);
      } else {
        // Settle the pre-check outcomes, then isolate within the aggregate.
        std::vector<SigncryptedMessage> suspects;
        std::vector<std::uint64_t> suspect_ids;
        for (std::size_t i = 0; i < ids.size(); ++i) {
          if (res.status[i] == MessageStatus::kBatchRejected) {
            suspects.push_back(batch[i]);
            suspect_ids.push_back(ids[i]);
          }
        }
        settle(res, ids, false);
        if (!suspects.empty()) {
          t0 = Clock::now();
          const auto bad = isolate_bad_signers(params, bed.rsu(), beacon.eta, suspects, sc.policy);
          report.isolate_ms += ms_since(t0);

          std::vector<SigncryptedMessage> rest;
          std::vector<std::uint64_t> rest_ids;
          for (std::size_t i = 0, b = 0; i < suspects.size(); ++i) {
            if (b < bad.size() && bad[b] == i) {
              report.isolated_ids.push_back(suspect_ids[i]);
              ++report.messages_rejected;
              ++b;
            } else {
              rest.push_back(suspects[i]);
              rest_ids.push_back(suspect_ids[i]);
            }
          }
          if (!rest.empty()) {
            t0 = Clock::now();
            auto retry = batch_verify(params, bed.rsu(), beacon.eta, rest, now, options);
            report.verify_ms += ms_since(t0);
            settle(retry, rest_ids, true);
          }
        }
      }
      begin = end;
    }
  }

  std::sort(report.isolated_ids.begin(), report.isolated_ids.end());
  std::sort(report.tampered_ids.begin(), report.tampered_ids.end());
  report.bad_signers_isolated = report.isolated_ids.size();
  return report;
}

SimReport replay_attack_check(const Scenario& sc) {
  if (sc.adversary != Adversary::kReplay || sc.adversary_rate <= 0.0) {
    throw ProtocolError(ErrorCode::kInvalidArgument, "replay check needs a replay adversary");
  }
  return run_scenario(sc);
}

std::string SimReport::to_text() const {
  std::ostringstream out;
  out << "batches_processed=" << batches_processed << '\n'
      << "messages_sent=" << messages_sent << '\n'
      << "messages_accepted=" << messages_accepted << '\n'
      << "messages_rejected=" << messages_rejected << '\n'
      << "rejected_replay=" << rejected_replay << '\n'
      << "rejected_precheck=" << rejected_precheck << '\n'
      << "bad_signers_isolated=" << bad_signers_isolated << '\n'
      << "plaintext_mismatches=" << plaintext_mismatches << '\n'
      << "isolated_ids=" << join(isolated_ids) << '\n'
      << "tampered_ids=" << join(tampered_ids) << '\n'
      << "replayed_ids=" << join(replayed_ids) << '\n'
      << "time_registration_ms=" << registration_ms << '\n'
      << "time_signcrypt_ms=" << signcrypt_ms << '\n'
      << "time_verify_ms=" << verify_ms << '\n'
      << "time_isolate_ms=" << isolate_ms << '\n';
  return out.str();
}

bool SimReport::same_outcome(const SimReport& o) const {
  auto key = [](const SimReport& r) {
    return std::tie(r.batches_processed, r.messages_sent, r.messages_accepted,
                    r.messages_rejected, r.rejected_replay, r.rejected_precheck,
                    r.bad_signers_isolated, r.plaintext_mismatches, r.isolated_ids,
                    r.tampered_ids, r.replayed_ids);
  };
  return key(*this) == key(o);
}

}  // namespace v2isc::sim
