// Copyright 2026 The needsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NEEDSIM_HARNESS_H_
#define NEEDSIM_HARNESS_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "needsim/config.h"
#include "needsim/metrics.h"
#include "needsim/world.h"

namespace needsim {

inline constexpr std::string_view kVersion = "0.1.0";

// Builds the world, seeds the configured infections and steps ticks_total
// times. Fully determined by (config, seed).
RunMetrics RunSingle(const ScenarioConfig& config, std::uint64_t seed);

// Same as RunSingle but hands back the final world (ledger, logs).
RunMetrics RunSingle(const ScenarioConfig& config, std::uint64_t seed, World& final_world);

std::vector<std::uint64_t> BatchSeeds(const ScenarioConfig& config);

struct BatchResult {
  std::vector<RunMetrics> runs;
  BatchSummary summary;

  bool operator==(const BatchResult&) const = default;
};

// Runs config.runs replications with seeds base_seed + i on up to `parallel`
// threads. Results do not depend on `parallel`.
BatchResult RunBatch(const ScenarioConfig& config, int parallel = 1);

std::string CsvField(std::string_view s);
// One row per tick in MetricColumns() order.
void WriteRunCsv(std::ostream& out, const RunMetrics& run);
// Long format: scope,tick,metric,mean,sd,ci95_half_width.
void WriteSummaryCsv(std::ostream& out, const BatchSummary& summary);
void WriteLedgerCsv(std::ostream& out, const Ledger& ledger);
void WriteTransmissionCsv(std::ostream& out, const std::vector<TransmissionEvent>& log);

struct Manifest {
  std::string version{kVersion};
  std::string command = "batch";
  int parallel = 1;
  std::vector<std::uint64_t> seeds;
  ScenarioConfig config;
  // Calibration file contents exactly as given, if any.
  std::optional<std::string> calibration;

  bool operator==(const Manifest&) const = default;
};

std::string SerializeManifest(const Manifest& m);
// Throws ConfigError.
Manifest ParseManifest(std::string_view text);

// Writes run_<i>.csv for every run, summary.csv and manifest.json.
void WriteOutputs(const std::filesystem::path& dir, const BatchResult& result,
                  const Manifest& manifest);

// Replays a manifest into `dir`; outputs match the original byte for byte.
BatchResult Replay(const Manifest& manifest, const std::filesystem::path& dir);

}  // namespace needsim

#endif  // NEEDSIM_HARNESS_H_
