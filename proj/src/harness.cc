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

#include "needsim/harness.h"

#include <atomic>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace needsim {

RunMetrics RunSingle(const ScenarioConfig& config, std::uint64_t seed, World& final_world) {
  World world = GeneratePopulation(config, seed);
  SeedInfection(world, config.epidemic.initial_infected);
  RunMetrics run;
  run.seed = seed;
  run.ticks.reserve(static_cast<std::size_t>(config.ticks_total));
  for (int t = 0; t < config.ticks_total; ++t) run.ticks.push_back(StepWorld(world));
  run.policy_log = world.active_policies.log;
  final_world = std::move(world);
  return run;
}

RunMetrics RunSingle(const ScenarioConfig& config, std::uint64_t seed) {
  World world;
  return RunSingle(config, seed, world);
}

std::vector<std::uint64_t> BatchSeeds(const ScenarioConfig& config) {
  std::vector<std::uint64_t> seeds;
  for (int i = 0; i < config.runs; ++i) seeds.push_back(config.base_seed + static_cast<std::uint64_t>(i));
  return seeds;
}

BatchResult RunBatch(const ScenarioConfig& config, int parallel) {
  ValidateConfig(config);
  const std::vector<std::uint64_t> seeds = BatchSeeds(config);
  BatchResult result;
  result.runs.resize(seeds.size());
  const int workers = std::max(1, std::min<int>(parallel, static_cast<int>(seeds.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < seeds.size(); ++i) result.runs[i] = RunSingle(config, seeds[i]);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < seeds.size(); i = next++) {
          try {
            result.runs[i] = RunSingle(config, seeds[i]);
          } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mu);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    for (std::thread& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }
  result.summary = Aggregate(result.runs);
  return result;
}

std::string CsvField(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void WriteRunCsv(std::ostream& out, const RunMetrics& run) {
  const auto& cols = MetricColumns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    out << (i ? "," : "") << CsvField(cols[i].name);
  }
  out << '\n';
  for (const TickMetrics& t : run.ticks) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      out << (i ? "," : "") << FormatValue(cols[i].get(t));
    }
    out << '\n';
  }
}

void WriteSummaryCsv(std::ostream& out, const BatchSummary& s) {
  out << "scope,tick,metric,mean,sd,ci95_half_width\n";
  auto row = [&](std::string_view scope, const std::string& tick, const std::string& metric,
                 const Stat& st) {
    out << scope << ',' << tick << ',' << CsvField(metric) << ',' << FormatValue(st.mean) << ','
        << FormatValue(st.sd) << ',' << FormatValue(st.ci95) << '\n';
  };
  for (std::size_t t = 0; t < s.per_tick.size(); ++t) {
    for (std::size_t m = 0; m < s.metric_names.size(); ++m) {
      row("tick", std::to_string(t), s.metric_names[m], s.per_tick[t][m]);
    }
  }
  for (const auto& [name, st] : s.scalars) row("run", "", name, st);
}

namespace {

std::string PartyName(const Party& p) {
  switch (p.kind) {
    case Party::Kind::kAgent: return "agent:" + std::to_string(p.id);
    case Party::Kind::kPlace: return "place:" + std::to_string(p.id);
    case Party::Kind::kGovernment: return "government";
  }
  return "?";
}

}  // namespace

void WriteLedgerCsv(std::ostream& out, const Ledger& ledger) {
  out << "tick,payer,payee,amount,reason\n";
  for (const LedgerEntry& e : ledger.entries()) {
    out << e.tick << ',' << PartyName(e.payer) << ',' << PartyName(e.payee) << ',' << e.amount
        << ',' << ToString(e.reason) << '\n';
  }
}

void WriteTransmissionCsv(std::ostream& out, const std::vector<TransmissionEvent>& log) {
  out << "tick,place,infectors,newly_exposed\n";
  for (const TransmissionEvent& e : log) {
    std::string ids;
    for (std::size_t i = 0; i < e.newly_exposed.size(); ++i) {
      ids += (i ? " " : "") + std::to_string(e.newly_exposed[i]);
    }
    out << e.tick << ',' << e.place << ',' << e.infectors << ',' << CsvField(ids) << '\n';
  }
}

std::string SerializeManifest(const Manifest& m) {
  nlohmann::ordered_json j;
  j["version"] = m.version;
  j["command"] = m.command;
  j["parallel"] = m.parallel;
  j["seeds"] = m.seeds;
  j["config"] = nlohmann::ordered_json::parse(SerializeConfig(m.config));
  j["calibration"] = m.calibration ? nlohmann::ordered_json(*m.calibration) : nullptr;
  return j.dump(2) + "\n";
}

Manifest ParseManifest(std::string_view text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text.begin(), text.end());
  } catch (const nlohmann::ordered_json::parse_error& e) {
    throw ConfigError(std::string("manifest: ") + e.what());
  }
  Manifest m;
  try {
    m.version = j.at("version").get<std::string>();
    m.command = j.at("command").get<std::string>();
    m.parallel = j.at("parallel").get<int>();
    m.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    if (!j.at("calibration").is_null()) m.calibration = j.at("calibration").get<std::string>();
  } catch (const nlohmann::ordered_json::exception& e) {
    throw ConfigError(std::string("manifest: ") + e.what());
  }
  if (!j.contains("config")) throw ConfigError("manifest: missing config");
  m.config = ParseConfig(j["config"].dump());
  return m;
}

namespace {

void WriteFile(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << content;
  if (!f) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

void WriteOutputs(const std::filesystem::path& dir, const BatchResult& result,
                  const Manifest& manifest) {
  std::filesystem::create_directories(dir);
  for (std::size_t i = 0; i < result.runs.size(); ++i) {
    std::ostringstream s;
    WriteRunCsv(s, result.runs[i]);
    WriteFile(dir / ("run_" + std::to_string(i) + ".csv"), s.str());
  }
  std::ostringstream s;
  WriteSummaryCsv(s, result.summary);
  WriteFile(dir / "summary.csv", s.str());
  WriteFile(dir / "manifest.json", SerializeManifest(manifest));
}

BatchResult Replay(const Manifest& manifest, const std::filesystem::path& dir) {
  if (manifest.version != kVersion) {
    throw ConfigError("manifest was written by version " + manifest.version + ", this is " +
                      std::string(kVersion));
  }
  BatchResult result;
  for (std::uint64_t seed : manifest.seeds) result.runs.push_back(RunSingle(manifest.config, seed));
  result.summary = Aggregate(result.runs);
  WriteOutputs(dir, result, manifest);
  return result;
}

}  // namespace needsim
