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

// Acceptance gate. Prints one PASS/FAIL line per criterion and exits nonzero
// if any fails. Thresholds below are the contract; do not relax them.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "oracle.hpp"
#include "v2isc/bench.hpp"
#include "v2isc/transport_sim.hpp"
#include "v2isc/wire.hpp"

using namespace v2isc;

namespace {

// Pinned tolerances and budgets.
constexpr double kRoundTripBudgetS = 10.0;
constexpr double kTamperBudgetS = 60.0;
constexpr double kBatchAdvantageBudgetS = 30.0;
constexpr double kMinBatchSpeedup = 2.0;
constexpr int kFuzzTrials = 1000;
constexpr int kTraceTriples = 1000;
constexpr int kWrongBetaTrials = 10000;
constexpr int kRefreshes = 100;
constexpr std::size_t kTamperBatch = 5;
constexpr std::size_t kAdvantageN = 100;
constexpr int kAdvantageReps = 5;
constexpr double kSimTamperRate = 0.2;
constexpr std::size_t kSimVehicles = 20;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

// True when the record, after decoding, is accepted by the RSU with its
// plaintext released. Undecodable records count as rejected.
bool accepted_after_tamper(const Testbed& bed, const Testbed::Batch& batch, std::size_t victim,
                           const Bytes& wire) {
  SigncryptedMessage tampered;
  try {
    tampered = signcrypted_from_wire(bed.params(), wire);
  } catch (const ProtocolError&) {
    return false;
  }
  auto msgs = batch.messages;
  msgs[victim] = tampered;
  const auto res = batch_verify(bed.params(), bed.rsu(), batch.beacon.eta, msgs, bed.now());
  return res.status[victim] == MessageStatus::kAccepted || res.plaintexts[victim].has_value();
}

Outcome round_trip() {
  const auto t0 = Clock::now();
  Testbed bed(101);
  std::size_t checked = 0, exact = 0, batches_ok = 0;
  const std::size_t sizes[] = {1, 2, 10, 100};
  for (std::size_t n : sizes) {
    auto batch = bed.honest_batch(n);
    const auto res =
        batch_verify(bed.params(), bed.rsu(), batch.beacon.eta, batch.messages, bed.now());
    if (res.accepted) ++batches_ok;
    for (std::size_t i = 0; i < n; ++i) {
      ++checked;
      if (res.plaintexts[i] && *res.plaintexts[i] == batch.plaintexts[i]) ++exact;
    }
  }
  const double s = seconds_since(t0);
  std::ostringstream d;
  d << batches_ok << "/4 batches accepted, " << exact << "/" << checked
    << " plaintexts exact, " << s << " s (budget " << kRoundTripBudgetS << " s)";
  return {batches_ok == 4 && exact == checked && s < kRoundTripBudgetS, d.str()};
}

Outcome counts() {
  Testbed bed(102);
  bool ok = true;
  std::ostringstream d;

  const auto v = bed.enroll(bed.random_identity());
  const auto pkt = bed.beacon();
  OpCounter sc;
  {
    CounterScope scope(sc);
    signcrypt(bed.params(), v, pkt, bed.random_message(), bed.now(), bed.rng());
  }
  ok &= sc.scalar_mults == 3;
  d << "signcrypt " << sc.scalar_mults << "M";

  for (std::size_t n : {1u, 10u, 100u}) {
    auto batch = bed.honest_batch(n);
    const auto res =
        batch_verify(bed.params(), bed.rsu(), batch.beacon.eta, batch.messages, bed.now());
    ok &= res.accepted;
    ok &= res.verify_counts.scalar_mults == 5 && res.verify_counts.hashes_h1 == 3 * n + 1;
    ok &= res.decrypt_counts.scalar_mults == n && res.decrypt_counts.hashes_h2 == n;
    d << "; n=" << n << " verify " << res.verify_counts.scalar_mults << "M+"
      << res.verify_counts.hashes_h1 << "H decrypt " << res.decrypt_counts.scalar_mults << "M+"
      << res.decrypt_counts.hashes_h2 << "H";
  }
  return {ok, d.str()};
}

Outcome tamper_soundness() {
  const auto t0 = Clock::now();
  Testbed bed(103);
  const auto batch = bed.honest_batch(kTamperBatch);
  const auto layout = signcrypted_layout(bed.params());
  const std::set<std::string> required = {"t", "c", "X", "Y", "L", "PID1", "PID2", "tt"};

  // Per field: every bit of the first and last payload byte. Tagged fields
  // carry a one-byte type tag that is skipped so the flip lands in the value.
  std::size_t field_trials = 0, field_accepts = 0, fields_covered = 0;
  for (const auto& f : layout) {
    const bool tagged = f.name != "c" && f.name != "PID2";
    const std::size_t first = f.offset + (tagged ? 1 : 0);
    const std::size_t last = f.offset + f.length - 1;
    if (required.contains(f.name)) ++fields_covered;
    for (std::size_t pos : {first, last}) {
      for (int bit = 0; bit < 8; ++bit) {
        for (std::size_t victim = 0; victim < kTamperBatch; victim += 2) {
          Bytes wire = to_wire(batch.messages[victim]);
          wire[pos] ^= static_cast<std::uint8_t>(1u << bit);
          ++field_trials;
          if (accepted_after_tamper(bed, batch, victim, wire)) ++field_accepts;
        }
      }
    }
  }

  // Fuzz: 1 to 4 random bit flips anywhere in one random message.
  std::mt19937_64 rng(1003);
  std::size_t fuzz_accepts = 0;
  for (int trial = 0; trial < kFuzzTrials; ++trial) {
    const std::size_t victim = rng() % kTamperBatch;
    Bytes wire = to_wire(batch.messages[victim]);
    const int flips = 1 + static_cast<int>(rng() % 4);
    for (int k = 0; k < flips; ++k) {
      wire[rng() % wire.size()] ^= static_cast<std::uint8_t>(1u << (rng() % 8));
    }
    if (wire == to_wire(batch.messages[victim])) {
      --trial;  // flips cancelled out
      continue;
    }
    if (accepted_after_tamper(bed, batch, victim, wire)) ++fuzz_accepts;
  }

  const double s = seconds_since(t0);
  std::ostringstream d;
  d << fields_covered << "/8 fields, " << field_accepts << "/" << field_trials
    << " single-flip accepts, " << fuzz_accepts << "/" << kFuzzTrials << " fuzz accepts, " << s
    << " s (budget " << kTamperBudgetS << " s)";
  return {fields_covered == 8 && field_accepts == 0 && fuzz_accepts == 0 && s < kTamperBudgetS,
          d.str()};
}

Outcome traceability() {
  Testbed bed(104);
  const Group& g = bed.group();
  std::mt19937_64 rng(1004);
  std::size_t recovered = 0;
  for (int i = 0; i < kTraceTriples; ++i) {
    const RealIdentity rid = bed.random_identity();
    const auto req = vehicle_pid_request(g, bed.rng());
    const std::int64_t start = static_cast<std::int64_t>(rng() % 4'000'000'000ULL);
    const ValidityPeriod T{Timestamp{start}, Timestamp{start + 1 + static_cast<std::int64_t>(rng() % 1'000'000)}};
    const PseudoId pid = bed.tra().issue_pid(rid, req.pid1, T);
    if (bed.tra().trace(pid) == rid) ++recovered;
  }

  // Wrong beta: never recover the identity, either through trace() or by
  // reading the identity bytes of the raw unmask.
  const RealIdentity rid = bed.random_identity();
  const auto v = bed.enroll(rid);
  const std::size_t id_len = bed.params().id_len;
  std::size_t leaks = 0;
  for (int i = 0; i < kWrongBetaTrials; ++i) {
    const Scalar beta = Scalar::random_nonzero(g, bed.rng());
    if (beta == bed.tra().trace_key().secret) continue;
    const Bytes full = oracle::unmask(g, beta, v.pid);
    if (Bytes(full.end() - static_cast<std::ptrdiff_t>(id_len), full.end()) == rid.rid) ++leaks;
  }
  std::ostringstream d;
  d << recovered << "/" << kTraceTriples << " traced exactly, " << leaks << "/"
    << kWrongBetaTrials << " wrong-key recoveries";
  return {recovered == static_cast<std::size_t>(kTraceTriples) && leaks == 0, d.str()};
}

Outcome unlinkability() {
  Testbed bed(105);
  const RealIdentity rid = bed.random_identity();
  const auto pkt = bed.beacon();
  std::set<std::pair<Bytes, Bytes>> pairs;
  // value -> index of the message it first appeared in
  std::map<Bytes, int> owner;
  std::size_t shared = 0;
  auto note = [&](const Bytes& value, int who) {
    auto [it, fresh] = owner.emplace(value, who);
    if (!fresh && it->second != who) ++shared;
  };
  for (int i = 0; i < kRefreshes; ++i) {
    // Distinct validity windows and send times, so no field is equal by
    // construction.
    const ValidityPeriod T{Timestamp{bed.now().seconds - 86'400 - i},
                           Timestamp{bed.now().seconds + 86'400 + i}};
    const auto keys = refresh_pseudonym(bed.params(), rid, T, bed.tra(), bed.kmc(), bed.rng());
    pairs.emplace(keys.pid.pid1.to_bytes(), keys.pid.pid2);
    const auto m = signcrypt(bed.params(), keys, pkt, bed.random_message(),
                             Timestamp{bed.now().seconds + i}, bed.rng());
    note(encode(m.t), i);
    note(m.c, i);
    note(encode(m.X), i);
    note(encode(m.Y), i);
    note(encode(m.L), i);
    note(encode(m.pid.pid1), i);
    note(m.pid.pid2, i);
    note(encode(m.pid.validity.start), i);
    note(encode(m.pid.validity.end), i);
    note(encode(m.tt), i);
  }
  std::ostringstream d;
  d << pairs.size() << "/" << kRefreshes << " distinct (PID1, PID2), " << shared
    << " public values shared across pseudonyms";
  return {pairs.size() == static_cast<std::size_t>(kRefreshes) && shared == 0, d.str()};
}

Outcome batch_advantage() {
  const auto t0 = Clock::now();
  Testbed bed(106);
  auto batch = bed.honest_batch(kAdvantageN);
  std::vector<double> batched, single;
  bool all_ok = true;
  for (int rep = 0; rep <= kAdvantageReps; ++rep) {  // rep 0 is warmup
    auto a = Clock::now();
    all_ok &= batch_verify(bed.params(), bed.rsu(), batch.beacon.eta, batch.messages, bed.now())
                  .accepted;
    const double tb = seconds_since(a);
    a = Clock::now();
    for (const auto& m : batch.messages) {
      all_ok &= batch_verify(bed.params(), bed.rsu(), batch.beacon.eta, std::span(&m, 1),
                             bed.now())
                    .accepted;
    }
    const double ts = seconds_since(a);
    if (rep > 0) {
      batched.push_back(tb);
      single.push_back(ts);
    }
  }
  const double mb = bench::percentile(batched, 50);
  const double ms = bench::percentile(single, 50);
  const double speedup = ms / mb;
  const double s = seconds_since(t0);
  std::ostringstream d;
  d << "n=" << kAdvantageN << " batch " << mb * 1e3 << " ms vs " << kAdvantageN
    << " singles " << ms * 1e3 << " ms, speedup " << speedup << "x (need >= "
    << kMinBatchSpeedup << "x), " << s << " s (budget " << kBatchAdvantageBudgetS << " s)";
  return {all_ok && speedup >= kMinBatchSpeedup && s < kBatchAdvantageBudgetS, d.str()};
}

Outcome verify_before_decrypt() {
  Testbed bed(107);
  const Group& g = bed.group();
  std::size_t cases = 0, clean = 0;
  for (int field = 0; field < 6; ++field) {
    auto batch = bed.honest_batch(10);
    auto& m = batch.messages[static_cast<std::size_t>(field)];
    switch (field) {
      case 0: m.t += Scalar(g, 1); break;
      case 1: m.c[3] ^= 0x04; break;
      case 2: m.X += g.generator(); break;
      case 3: m.Y += g.generator(); break;
      case 4: m.L += g.generator(); break;
      case 5: m.tt.seconds += 1; break;
    }
    OpCounter total;
    BatchResult res;
    {
      CounterScope scope(total);
      res = batch_verify(bed.params(), bed.rsu(), batch.beacon.eta, batch.messages, bed.now());
    }
    ++cases;
    bool no_plain = true;
    for (const auto& p : res.plaintexts) no_plain &= !p.has_value();
    if (!res.accepted && no_plain && res.decrypt_counts == OpCounter{} && total.hashes_h2 == 0 &&
        total.scalar_mults == 5) {
      ++clean;
    }
  }
  std::ostringstream d;
  d << clean << "/" << cases << " rejected batches with 0 H2 and 0 decryption mults";
  return {clean == cases, d.str()};
}

Outcome simulator() {
  std::size_t exact = 0, nonempty = 0, deterministic = 0;
  const std::uint64_t seeds[] = {1, 2, 3, 4, 5};
  for (std::uint64_t seed : seeds) {
    sim::Scenario sc;
    sc.n_vehicles = kSimVehicles;
    sc.adversary = sim::Adversary::kTamper;
    sc.adversary_rate = kSimTamperRate;
    sc.seed = seed;
    const auto a = sim::run_scenario(sc);
    sc.producers = 1;
    const auto b = sim::run_scenario(sc);
    if (!a.tampered_ids.empty()) ++nonempty;
    if (a.isolated_ids == a.tampered_ids &&
        a.messages_accepted == a.messages_sent - a.tampered_ids.size() &&
        a.plaintext_mismatches == 0) {
      ++exact;
    }
    if (a.same_outcome(b)) ++deterministic;
  }
  const std::size_t n = std::size(seeds);
  std::ostringstream d;
  d << "rate " << kSimTamperRate << " n=" << kSimVehicles << ": " << exact << "/" << n
    << " seeds isolate exactly the tampered set (" << nonempty << " non-empty), "
    << deterministic << "/" << n << " reruns identical";
  return {exact == n && deterministic == n && nonempty > 0, d.str()};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"1 round trip", round_trip},
      {"2 operation counts", counts},
      {"3 tamper soundness", tamper_soundness},
      {"4 traceability", traceability},
      {"5 unlinkability", unlinkability},
      {"6 batch advantage", batch_advantage},
      {"7 verify before decrypt", verify_before_decrypt},
      {"8 simulator isolation and determinism", simulator},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failures,
              std::size(criteria));
  return failures == 0 ? 0 : 1;
}
