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

// v2isc: benchmarks, transport scenarios and an end-to-end demo.
//
// Exit codes: 0 success, 1 usage error, 2 runtime failure.
// V2ISC_SEED sets the default seed.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "v2isc/bench.hpp"
#include "v2isc/transport_sim.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("V2ISC_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "ignoring invalid V2ISC_SEED=" << env << '\n';
    }
  }
  return 1;
}

v2isc::kernels::Policy parse_policy(bool serial) {
  return serial ? v2isc::kernels::Policy::kSerial : v2isc::kernels::Policy::kParallel;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace v2isc;

  CLI::App app{"Certificateless aggregate signcryption for V2I"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = default_seed();
  bool serial = false;
  app.add_option("--seed", seed, "RNG seed (default: $V2ISC_SEED or 1)");
  app.add_flag("--serial", serial, "Use the serial kernels instead of OpenMP");

  // bench
  bench::BenchConfig cfg;
  std::string mode_name = "counts";
  auto* bench_cmd = app.add_subcommand("bench", "Time and count protocol phases, emit CSV");
  bench_cmd->add_option("--n", cfg.n_values, "Batch sizes, ascending")->expected(1, -1);
  bench_cmd->add_option("--reps", cfg.repetitions, "Timed repetitions per batch size");
  bench_cmd->add_option("--mode", mode_name,
                        "signcrypt|verify|decrypt|unsigncrypt|counts|scenario");
  bench_cmd->add_option("--out", cfg.output_path, "CSV output path (default: stdout)");

  // sim
  sim::Scenario sc;
  double tamper = 0.0;
  double replay = 0.0;
  auto* sim_cmd = app.add_subcommand("sim", "Run a simulated V2I transport scenario");
  sim_cmd->add_option("--n", sc.n_vehicles, "Number of vehicles");
  sim_cmd->add_option("--reps", sc.reports_per_vehicle, "Reports per vehicle");
  sim_cmd->add_option("--window", sc.batch_window_ms, "Batch window in simulated ms");
  sim_cmd->add_option("--batch-max", sc.batch_max, "Maximum batch size");
  sim_cmd->add_option("--producers", sc.producers, "Producer threads");
  auto* tamper_opt = sim_cmd->add_option("--tamper", tamper, "Per-message tamper rate")
                         ->check(CLI::Range(0.0, 1.0));
  sim_cmd->add_option("--replay", replay, "Per-message replay rate")
      ->check(CLI::Range(0.0, 1.0))
      ->excludes(tamper_opt);
  sim_cmd->add_flag("--replay-modify-tt", sc.replay_modify_tt, "Replay with tt + 1");
  std::string sim_out;
  sim_cmd->add_option("--out", sim_out, "Report output path (default: stdout)");

  // demo
  auto* demo_cmd = app.add_subcommand("demo", "One end-to-end run printing every value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*bench_cmd) {
      auto mode = bench::parse_mode(mode_name);
      if (!mode) {
        std::cerr << "unknown mode: " << mode_name << '\n';
        return kExitUsage;
      }
      cfg.mode = *mode;
      cfg.seed = seed;
      cfg.policy = parse_policy(serial);
      try {
        cfg.validate();
      } catch (const ProtocolError& e) {
        std::cerr << "invalid configuration: " << e.what() << '\n';
        return kExitUsage;
      }
      const auto rows = bench::run(cfg);
      if (cfg.output_path.empty()) {
        bench::write_csv(std::cout, rows);
      } else {
        bench::write_csv(cfg.output_path, rows);
      }
    } else if (*sim_cmd) {
      sc.seed = seed;
      sc.policy = parse_policy(serial);
      if (tamper > 0) {
        sc.adversary = sim::Adversary::kTamper;
        sc.adversary_rate = tamper;
      } else if (replay > 0) {
        sc.adversary = sim::Adversary::kReplay;
        sc.adversary_rate = replay;
      }
      try {
        sc.validate();
      } catch (const ProtocolError& e) {
        std::cerr << "invalid scenario: " << e.what() << '\n';
        return kExitUsage;
      }
      const auto report = sim::run_scenario(sc);
      if (sim_out.empty()) {
        std::cout << report.to_text();
      } else {
        std::ofstream out(sim_out);
        out << report.to_text();
        if (!out.flush()) throw std::runtime_error("cannot write " + sim_out);
      }
    } else if (*demo_cmd) {
      std::cout << bench::demo_transcript(seed);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
