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
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "v2isc/kernels.hpp"

namespace v2isc::bench {

enum class Mode { kSigncrypt, kVerify, kDecrypt, kUnsigncrypt, kCounts, kScenario };

std::optional<Mode> parse_mode(std::string_view s);
std::string_view to_string(Mode m);

struct BenchConfig {
  std::vector<std::size_t> n_values{1, 10, 100};
  std::size_t repetitions = 5;
  Mode mode = Mode::kCounts;
  std::uint64_t seed = 1;
  std::string output_path;  // empty: caller prints
  kernels::Policy policy = kernels::Policy::kParallel;

  // Throws kInvalidArgument unless n_values is non-empty, positive and
  // strictly ascending, and repetitions >= 3.
  void validate() const;
};

// One CSV row. Timings cover the whole batch of n; counts are totals for it.
struct BenchRow {
  std::string mode;
  std::size_t n = 0;
  double median_ms = 0;
  double p10_ms = 0;
  double p90_ms = 0;
  OpCounter counts;
};

// Times the configured phase `repetitions` times per n on fresh honest
// batches, after one discarded warmup. Counts are identical across
// repetitions and are taken from the last one. kCounts emits a signcrypt,
// verify and decrypt row per n.
std::vector<BenchRow> run(const BenchConfig& cfg);

// Fixed column order; wall-clock columns are marked as such in the header.
std::string csv_header();
std::string csv_row(const BenchRow& row);
void write_csv(std::ostream& out, const std::vector<BenchRow>& rows);
// Throws std::runtime_error when `path` cannot be written.
void write_csv(const std::string& path, const std::vector<BenchRow>& rows);

// Nearest-rank percentile of unsorted samples, p in [0, 100].
double percentile(std::vector<double> samples, double p);

// End-to-end walk through every phase with all intermediate values printed.
// Byte-identical for a given seed.
std::string demo_transcript(std::uint64_t seed);

}  // namespace v2isc::bench
