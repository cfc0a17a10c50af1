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

#include <omp.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "oracle.hpp"
#include "v2isc/bench.hpp"
#include "v2isc/transport_sim.hpp"
#include "v2isc/wire.hpp"

using namespace v2isc;

TEST_SUITE("kernels") {
  TEST_CASE("parallel kernels match the serial reference") {
    Testbed bed(91);
    auto batch = bed.honest_batch(37);
    const Bytes cert = to_wire(bed.rsu().cert);
    const int saved = omp_get_max_threads();
    for (int threads : {1, 3, 8}) {
      omp_set_num_threads(threads);
      OpCounter cs, cp;
      std::vector<kernels::MessageHashes> hs, hp;
      {
        CounterScope scope(cs);
        hs = kernels::message_hashes_serial(bed.group(), cert, batch.messages);
      }
      {
        CounterScope scope(cp);
        hp = kernels::message_hashes_parallel(bed.group(), cert, batch.messages);
      }
      REQUIRE(hs.size() == hp.size());
      for (std::size_t i = 0; i < hs.size(); ++i) {
        CHECK(hs[i].q == hp[i].q);
        CHECK(hs[i].h3 == hp[i].h3);
        CHECK(hs[i].h4 == hp[i].h4);
      }
      CHECK(cs == cp);
      CHECK(cs.hashes_h1 == 3 * 37);

      OpCounter ds, dp;
      std::vector<Bytes> ps, pp;
      {
        CounterScope scope(ds);
        ps = kernels::decrypt_serial(bed.params(), bed.rsu().secret, batch.messages);
      }
      {
        CounterScope scope(dp);
        pp = kernels::decrypt_parallel(bed.params(), bed.rsu().secret, batch.messages);
      }
      CHECK(ps == pp);
      CHECK(ps == batch.plaintexts);
      CHECK(ds == dp);
      CHECK(ds.scalar_mults == 37);
      CHECK(ds.hashes_h2 == 37);
    }
    omp_set_num_threads(saved);
  }

  TEST_CASE("reference hashes match the kernels") {
    Testbed bed(92);
    auto batch = bed.honest_batch(5);
    const Bytes cert = to_wire(bed.rsu().cert);
    const auto hs = kernels::message_hashes_parallel(bed.group(), cert, batch.messages);
    for (std::size_t i = 0; i < 5; ++i) {
      const auto& m = batch.messages[i];
      const Bytes pid = oracle::pid_bytes(m.pid);
      CHECK(hs[i].q == oracle::h1(bed.group(), "H1", oracle::cat({pid, oracle::enc_point(m.Y)})));
      CHECK(hs[i].h4 == oracle::h1(bed.group(), "H1",
                                   oracle::cat({oracle::enc_bytes(m.c), oracle::enc_point(m.X),
                                                oracle::cert_bytes(bed.rsu().cert),
                                                oracle::enc_ts(m.tt)})));
    }
  }

  TEST_CASE("errors inside a parallel kernel surface to the caller") {
    Testbed bed(93);
    auto batch = bed.honest_batch(4);
    batch.messages[2].c.pop_back();
    CHECK_THROWS(kernels::decrypt_parallel(bed.params(), bed.rsu().secret, batch.messages));
    CHECK_THROWS(kernels::decrypt_serial(bed.params(), bed.rsu().secret, batch.messages));
  }

  TEST_CASE("verification verdict does not depend on the policy") {
    Testbed bed(94);
    auto batch = bed.honest_batch(12);
    CHECK(aggregate_verify(bed.params(), bed.rsu(), batch.beacon.eta, batch.messages,
                           kernels::Policy::kSerial));
    CHECK(aggregate_verify(bed.params(), bed.rsu(), batch.beacon.eta, batch.messages,
                           kernels::Policy::kParallel));
    batch.messages[7].L += bed.group().generator();
    CHECK_FALSE(aggregate_verify(bed.params(), bed.rsu(), batch.beacon.eta, batch.messages,
                                 kernels::Policy::kSerial));
    CHECK_FALSE(aggregate_verify(bed.params(), bed.rsu(), batch.beacon.eta, batch.messages,
                                 kernels::Policy::kParallel));
  }
}

TEST_SUITE("transport_sim") {
  TEST_CASE("honest run accepts everything") {
    sim::Scenario sc;
    sc.n_vehicles = 10;
    sc.seed = 3;
    const auto r = sim::run_scenario(sc);
    CHECK(r.messages_sent == 10);
    CHECK(r.messages_accepted == 10);
    CHECK(r.messages_rejected == 0);
    CHECK(r.plaintext_mismatches == 0);
    CHECK(r.isolated_ids.empty());
  }

  TEST_CASE("single vehicle, single report") {
    sim::Scenario sc;
    sc.n_vehicles = 1;
    const auto r = sim::run_scenario(sc);
    CHECK(r.messages_accepted == 1);
    CHECK(r.batches_processed == 1);
  }

  TEST_CASE("tampered messages are isolated and honest ones accepted") {
    for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
      sim::Scenario sc;
      sc.n_vehicles = 10;
      sc.reports_per_vehicle = 2;
      sc.adversary = sim::Adversary::kTamper;
      sc.adversary_rate = 0.2;
      sc.seed = seed;
      const auto r = sim::run_scenario(sc);
      CAPTURE(seed);
      CHECK(r.isolated_ids == r.tampered_ids);
      CHECK(r.messages_accepted == r.messages_sent - r.tampered_ids.size());
      CHECK(r.plaintext_mismatches == 0);
    }
  }

  TEST_CASE("reports are reproducible and independent of producer count") {
    sim::Scenario sc;
    sc.n_vehicles = 12;
    sc.reports_per_vehicle = 2;
    sc.adversary = sim::Adversary::kTamper;
    sc.adversary_rate = 0.25;
    sc.seed = 17;
    sc.producers = 1;
    const auto a = sim::run_scenario(sc);
    sc.producers = 6;
    const auto b = sim::run_scenario(sc);
    sc.policy = kernels::Policy::kSerial;
    const auto c = sim::run_scenario(sc);
    CHECK(a.same_outcome(b));
    CHECK(a.same_outcome(c));
    sc.seed = 18;
    CHECK_FALSE(a.same_outcome(sim::run_scenario(sc)));
  }

  TEST_CASE("replayed duplicates are rejected without failing the batch") {
    sim::Scenario sc;
    sc.n_vehicles = 10;
    sc.adversary = sim::Adversary::kReplay;
    sc.adversary_rate = 0.3;
    sc.seed = 4;
    const auto r = sim::replay_attack_check(sc);
    REQUIRE_FALSE(r.replayed_ids.empty());
    CHECK(r.rejected_replay == r.replayed_ids.size());
    CHECK(r.messages_rejected == r.replayed_ids.size());
    CHECK(r.messages_accepted == 10);
    CHECK(r.messages_sent == 10 + r.replayed_ids.size());
  }

  TEST_CASE("replay with a modified timestamp enters normal verification") {
    sim::Scenario sc;
    sc.n_vehicles = 10;
    sc.adversary = sim::Adversary::kReplay;
    sc.adversary_rate = 0.3;
    sc.replay_modify_tt = true;
    sc.seed = 4;
    const auto r = sim::replay_attack_check(sc);
    REQUIRE_FALSE(r.replayed_ids.empty());
    CHECK(r.rejected_replay == 0);
    // The altered tt breaks h3 and h4, so the copies fail verification.
    CHECK(r.isolated_ids == r.replayed_ids);
    CHECK(r.messages_accepted == 10);
  }

  TEST_CASE("zero replay rate means no replay rejections") {
    sim::Scenario sc;
    sc.adversary = sim::Adversary::kReplay;
    sc.adversary_rate = 0.0;
    const auto r = sim::run_scenario(sc);
    CHECK(r.rejected_replay == 0);
    CHECK(r.replayed_ids.empty());
    CHECK_THROWS_AS(sim::replay_attack_check(sc), ProtocolError);
  }

  TEST_CASE("batches are cut by size") {
    sim::Scenario sc;
    sc.n_vehicles = 20;
    sc.batch_max = 3;
    sc.batch_window_ms = 1'000'000;
    const auto r = sim::run_scenario(sc);
    CHECK(r.batches_processed == 7);
    CHECK(r.messages_accepted == 20);
  }

  TEST_CASE("invalid scenarios are rejected") {
    sim::Scenario sc;
    sc.n_vehicles = 0;
    CHECK_THROWS_AS(sim::run_scenario(sc), ProtocolError);
    sc = {};
    sc.adversary_rate = 1.5;
    CHECK_THROWS_AS(sim::run_scenario(sc), ProtocolError);
  }

  TEST_CASE("ordered queue drains in key order") {
    sim::OrderedQueue<int> q;
    for (int v : {5, 1, 4, 2, 3}) q.push(v);
    CHECK(q.drain_sorted() == std::vector<int>{1, 2, 3, 4, 5});
    CHECK(q.drain_sorted().empty());
  }

  TEST_CASE("report text") {
    sim::Scenario sc;
    sc.n_vehicles = 2;
    const std::string text = sim::run_scenario(sc).to_text();
    CHECK(text.find("messages_accepted=2\n") != std::string::npos);
    CHECK(text.find("time_verify_ms=") != std::string::npos);
  }
}

TEST_SUITE("bench_cli") {
  TEST_CASE("count rows reproduce the complexity table") {
    bench::BenchConfig cfg;
    cfg.n_values = {1, 50, 100};
    cfg.repetitions = 3;
    const auto rows = bench::run(cfg);
    REQUIRE(rows.size() == 9);
    for (const auto& row : rows) {
      CAPTURE(row.mode);
      CAPTURE(row.n);
      if (row.mode == "signcrypt") {
        CHECK(row.counts.scalar_mults == 3 * row.n);
        CHECK(row.counts.hashes_h1 == 3 * row.n);
        CHECK(row.counts.hashes_h2 == row.n);
      } else if (row.mode == "verify") {
        CHECK(row.counts.scalar_mults == 5);
        CHECK(row.counts.hashes_h1 == 3 * row.n + 1);
        CHECK(row.counts.hashes_h2 == 0);
      } else {
        CHECK(row.mode == "decrypt");
        CHECK(row.counts.scalar_mults == row.n);
        CHECK(row.counts.hashes_h2 == row.n);
      }
      CHECK(row.p10_ms <= row.median_ms);
      CHECK(row.median_ms <= row.p90_ms);
    }
  }

  TEST_CASE("count columns are identical across runs") {
    bench::BenchConfig cfg;
    cfg.n_values = {3, 7};
    cfg.repetitions = 3;
    cfg.mode = bench::Mode::kUnsigncrypt;
    const auto a = bench::run(cfg);
    const auto b = bench::run(cfg);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].counts == b[i].counts);
    CHECK(a[0].counts.scalar_mults == 5 + 3);
  }

  TEST_CASE("verify time grows slower than n") {
    bench::BenchConfig cfg;
    cfg.n_values = {10, 100};
    cfg.repetitions = 5;
    cfg.mode = bench::Mode::kVerify;
    const auto rows = bench::run(cfg);
    CHECK(rows[1].median_ms < 10 * rows[0].median_ms);
  }

  TEST_CASE("config validation") {
    bench::BenchConfig cfg;
    cfg.n_values = {10, 1};
    CHECK_THROWS_AS(cfg.validate(), ProtocolError);
    cfg.n_values = {};
    CHECK_THROWS_AS(cfg.validate(), ProtocolError);
    cfg.n_values = {0, 1};
    CHECK_THROWS_AS(cfg.validate(), ProtocolError);
    cfg.n_values = {1};
    cfg.repetitions = 2;
    CHECK_THROWS_AS(cfg.validate(), ProtocolError);
    CHECK(bench::parse_mode("verify") == bench::Mode::kVerify);
    CHECK_FALSE(bench::parse_mode("nope").has_value());
  }

  TEST_CASE("csv layout") {
    bench::BenchRow row{"verify", 10, 1.5, 1.0, 2.0, OpCounter{5, 31, 0, 0}};
    std::ostringstream out;
    bench::write_csv(out, {row});
    std::istringstream in(out.str());
    std::string comment, header, line;
    std::getline(in, comment);
    std::getline(in, header);
    std::getline(in, line);
    CHECK(comment.rfind("# ", 0) == 0);
    CHECK(comment.find("wall-clock") != std::string::npos);
    CHECK(header == "mode,n,median_ms,p10_ms,p90_ms,scalar_mults,h1_calls,h2_calls");
    CHECK(line == "verify,10,1.5000,1.0000,2.0000,5,31,0");
    CHECK_THROWS(bench::write_csv("/nonexistent-dir/out.csv", {row}));
  }

  TEST_CASE("percentiles use nearest rank") {
    CHECK(bench::percentile({5, 1, 3, 2, 4}, 50) == 3);
    CHECK(bench::percentile({5, 1, 3, 2, 4}, 10) == 1);
    CHECK(bench::percentile({5, 1, 3, 2, 4}, 90) == 5);
    CHECK(bench::percentile({}, 50) == 0);
  }

  TEST_CASE("demo transcript is deterministic and self-consistent") {
    const std::string a = bench::demo_transcript(7);
    CHECK(a == bench::demo_transcript(7));
    CHECK(a != bench::demo_transcript(8));
    CHECK(a.find("m' == m = yes") != std::string::npos);
    CHECK(a.find("RID' == RID = yes") != std::string::npos);
    CHECK(a.find("V1 == V2 = yes") != std::string::npos);
    CHECK(a.find("signcrypt ops = 3M 3H1 1H2") != std::string::npos);
    CHECK(a.find("verify ops = 5M 4H1") != std::string::npos);
  }
}
