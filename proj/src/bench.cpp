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

#include "v2isc/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

#include "v2isc/testbed.hpp"
#include "v2isc/transport_sim.hpp"
#include "v2isc/wire.hpp"

namespace v2isc::bench {

namespace {

using Clock = std::chrono::steady_clock;

struct Sample {
  double ms;
  OpCounter counts;
};

// Enrolled vehicles plus a way to produce a fresh honest batch from them.
class Workload {
 public:
  Workload(std::uint64_t seed, std::size_t n) : bed_(seed) {
    vehicles_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) vehicles_.push_back(bed_.enroll(bed_.random_identity()));
  }

  Testbed& bed() { return bed_; }
  const std::vector<VehicleKeys>& vehicles() const { return vehicles_; }

  struct Fresh {
    BroadcastPacket beacon;
    std::vector<Bytes> plaintexts;
    std::vector<SigncryptedMessage> messages;
  };

  Fresh fresh(bool signcrypted) {
    Fresh f;
    f.beacon = bed_.beacon();
    for (const auto& v : vehicles_) {
      f.plaintexts.push_back(bed_.random_message());
      if (signcrypted) {
        f.messages.push_back(
            signcrypt(bed_.params(), v, f.beacon, f.plaintexts.back(), bed_.now(), bed_.rng()));
      }
    }
    return f;
  }

 private:
  Testbed bed_;
  std::vector<VehicleKeys> vehicles_;
};

template <typename F>
Sample measure(F&& f) {
  Sample s{};
  CounterScope scope(s.counts);
  const auto t0 = Clock::now();
  f();
  s.ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  return s;
}

// One timed execution of `mode` at batch size n on a fresh batch.
Sample run_once(Mode mode, Workload& w, std::size_t n, const BenchConfig& cfg) {
  Testbed& bed = w.bed();
  const auto& params = bed.params();
  switch (mode) {
    case Mode::kSigncrypt: {
      auto f = w.fresh(false);
      return measure([&] {
        for (std::size_t i = 0; i < n; ++i) {
          signcrypt(params, w.vehicles()[i], f.beacon, f.plaintexts[i], bed.now(), bed.rng());
        }
      });
    }
    case Mode::kVerify: {
      auto f = w.fresh(true);
      return measure([&] {
        if (!aggregate_verify(params, bed.rsu(), f.beacon.eta, f.messages, cfg.policy)) {
          throw ProtocolError(ErrorCode::kBackend, "honest batch rejected");
        }
      });
    }
    case Mode::kDecrypt: {
      auto f = w.fresh(true);
      return measure([&] { kernels::decrypt(cfg.policy, params, bed.rsu().secret, f.messages); });
    }
    case Mode::kUnsigncrypt: {
      auto f = w.fresh(true);
      VerifyOptions options;
      options.policy = cfg.policy;
      return measure([&] {
        if (!batch_verify(params, bed.rsu(), f.beacon.eta, f.messages, bed.now(), options).accepted) {
          throw ProtocolError(ErrorCode::kBackend, "honest batch rejected");
        }
      });
    }
    case Mode::kScenario: {
      sim::Scenario sc;
      sc.n_vehicles = n;
      sc.seed = cfg.seed;
      sc.policy = cfg.policy;
      return measure([&] { sim::run_scenario(sc); });
    }
    case Mode::kCounts:
      break;
  }
  throw ProtocolError(ErrorCode::kInvalidArgument, "mode has no single phase");
}

BenchRow summarize(Mode mode, std::size_t n, const std::vector<Sample>& samples) {
  std::vector<double> ms;
  for (const auto& s : samples) ms.push_back(s.ms);
  return BenchRow{std::string(to_string(mode)), n,           percentile(ms, 50),
                  percentile(ms, 10),           percentile(ms, 90), samples.back().counts};
}

}  // namespace

std::optional<Mode> parse_mode(std::string_view s) {
  for (Mode m : {Mode::kSigncrypt, Mode::kVerify, Mode::kDecrypt, Mode::kUnsigncrypt,
                 Mode::kCounts, Mode::kScenario}) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::kSigncrypt: return "signcrypt";
    case Mode::kVerify: return "verify";
    case Mode::kDecrypt: return "decrypt";
    case Mode::kUnsigncrypt: return "unsigncrypt";
    case Mode::kCounts: return "counts";
    case Mode::kScenario: return "scenario";
  }
  return "unknown";
}

void BenchConfig::validate() const {
  auto fail = [](const char* why) { throw ProtocolError(ErrorCode::kInvalidArgument, why); };
  if (n_values.empty()) fail("no batch sizes given");
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    if (n_values[i] == 0) fail("batch sizes must be positive");
    if (i > 0 && n_values[i] <= n_values[i - 1]) fail("batch sizes must be strictly ascending");
  }
  if (repetitions < 3) fail("at least 3 repetitions are required");
}

std::vector<BenchRow> run(const BenchConfig& cfg) {
  cfg.validate();
  const std::vector<Mode> phases =
      cfg.mode == Mode::kCounts ? std::vector<Mode>{Mode::kSigncrypt, Mode::kVerify, Mode::kDecrypt}
                                : std::vector<Mode>{cfg.mode};
  std::vector<BenchRow> rows;
  for (std::size_t n : cfg.n_values) {
    Workload w(cfg.seed + n, cfg.mode == Mode::kScenario ? 0 : n);
    for (Mode phase : phases) {
      run_once(phase, w, n, cfg);  // warmup
      std::vector<Sample> samples;
      for (std::size_t r = 0; r < cfg.repetitions; ++r) samples.push_back(run_once(phase, w, n, cfg));
      rows.push_back(summarize(phase, n, samples));
    }
  }
  return rows;
}

double percentile(std::vector<double> samples, double p) {
  if (samples.empty()) return 0.0;
  std::sort(samples.begin(), samples.end());
  const auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * static_cast<double>(samples.size())));
  return samples[std::clamp<std::size_t>(rank, 1, samples.size()) - 1];
}

std::string csv_header() { return "mode,n,median_ms,p10_ms,p90_ms,scalar_mults,h1_calls,h2_calls"; }

std::string csv_row(const BenchRow& row) {
  std::ostringstream out;
  out << row.mode << ',' << row.n << ',' << std::fixed << std::setprecision(4) << row.median_ms
      << ',' << row.p10_ms << ',' << row.p90_ms << ',' << row.counts.scalar_mults << ','
      << row.counts.hashes_h1 << ',' << row.counts.hashes_h2;
  return out.str();
}

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "# median_ms,p10_ms,p90_ms are wall-clock and machine dependent; "
         "scalar_mults,h1_calls,h2_calls are exact operation counts\n";
  out << csv_header() << '\n';
  for (const auto& r : rows) out << csv_row(r) << '\n';
}

void write_csv(const std::string& path, const std::vector<BenchRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_csv(out, rows);
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string demo_transcript(std::uint64_t seed) {
  std::ostringstream out;
  Testbed bed(seed);
  const auto& params = bed.params();
  const auto& g = bed.group();
  auto line = [&](std::string_view key, const std::string& value) {
    out << key << " = " << value << '\n';
  };

  out << "## system initialization\n";
  line("curve", g.curve_id());
  line("q", g.order_hex());
  line("P", g.generator().to_hex());
  line("P_pub", params.master_public.to_hex());
  line("T_pub", params.trace_public.to_hex());
  line("l_m", std::to_string(params.message_bits));

  out << "## rsu registration\n";
  const auto& rsu = bed.rsu();
  line("ID_R", std::string(rsu.rsu_id.begin(), rsu.rsu_id.end()));
  line("Y_R", rsu.public_key.to_hex());
  line("cert_R", to_hex(to_wire(rsu.cert)));
  line("cert_R valid", verify_rsu_cert(params.master_public, rsu.cert) ? "yes" : "no");

  out << "## pseudo-ID generation\n";
  const RealIdentity rid = bed.random_identity();
  line("RID", to_hex(rid.rid));
  const auto request = vehicle_pid_request(g, bed.rng());
  const PseudoId pid = bed.tra().issue_pid(rid, request.pid1, bed.default_validity());
  line("PID1", pid.pid1.to_hex());
  line("PID2", to_hex(pid.pid2));
  line("T", std::to_string(pid.validity.start.seconds) + ".." +
                std::to_string(pid.validity.end.seconds));

  out << "## vehicle registration\n";
  const VehicleKeys keys = register_vehicle(params, pid, bed.kmc(), bed.rng());
  line("Y", keys.partial_public.to_hex());
  line("L", keys.secret_public.to_hex());
  line("partial key valid",
       partial_key_valid(params.master_public, pid, {keys.partial_public, keys.partial_private})
           ? "yes"
           : "no");

  out << "## rsu broadcast\n";
  const BroadcastPacket pkt = bed.beacon();
  line("eta", pkt.eta.to_hex());
  line("tt_R", std::to_string(pkt.issued_at.seconds));
  line("beacon valid", validate_broadcast(pkt, params.master_public, bed.now()) ? "yes" : "no");

  out << "## traffic information uploading\n";
  const Bytes m = bed.random_message();
  line("m", to_hex(m));
  OpCounter sc_counts;
  SigncryptedMessage sigma;
  {
    CounterScope scope(sc_counts);
    sigma = signcrypt(params, keys, pkt, m, bed.now(), bed.rng());
  }
  line("t", sigma.t.to_hex());
  line("c", to_hex(sigma.c));
  line("X", sigma.X.to_hex());
  line("tt", std::to_string(sigma.tt.seconds));
  line("sigma", to_hex(to_wire(sigma)));
  line("signcrypt ops", std::to_string(sc_counts.scalar_mults) + "M " +
                            std::to_string(sc_counts.hashes_h1) + "H1 " +
                            std::to_string(sc_counts.hashes_h2) + "H2");

  out << "## batch verification and decryption\n";
  const std::vector<SigncryptedMessage> batch{sigma};
  const auto result = batch_verify(params, rsu, pkt.eta, batch, bed.now(),
                                   VerifyOptions{.policy = kernels::Policy::kSerial});
  line("V1 == V2", result.accepted ? "yes" : "no");
  line("verify ops", std::to_string(result.verify_counts.scalar_mults) + "M " +
                         std::to_string(result.verify_counts.hashes_h1) + "H1");
  line("decrypt ops", std::to_string(result.decrypt_counts.scalar_mults) + "M " +
                          std::to_string(result.decrypt_counts.hashes_h2) + "H2");
  if (result.accepted) {
    line("m'", to_hex(*result.plaintexts[0]));
    line("m' == m", *result.plaintexts[0] == m ? "yes" : "no");
  }

  out << "## trace\n";
  const RealIdentity traced = bed.tra().trace(sigma.pid);
  line("RID'", to_hex(traced.rid));
  line("RID' == RID", traced == rid ? "yes" : "no");
  return out.str();
}

}  // namespace v2isc::bench
