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

#include "needsim/cli.h"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "needsim/harness.h"

namespace needsim {
namespace {

std::string ReadFile(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot read " + path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::string DefaultOutDir() {
  const char* env = std::getenv("NEEDSIM_OUT_DIR");
  return env != nullptr && *env != '\0' ? env : "out";
}

struct Source {
  std::string config_path;
  std::string scenario;
  std::string calibration_path;
};

void AddSource(CLI::App* cmd, Source& src) {
  auto* cfg = cmd->add_option("--config,-c", src.config_path, "Scenario config (JSON)");
  auto* scn = cmd->add_option("--scenario", src.scenario, "Built-in scenario name");
  cfg->excludes(scn);
  cmd->add_option("--calibration", src.calibration_path,
                  "Needs calibration file; replaces the config's needs section");
}

// Returns the resolved config and, when given, the raw calibration text.
ScenarioConfig Load(const Source& src, std::optional<std::string>& calibration) {
  ScenarioConfig config;
  if (!src.config_path.empty()) {
    config = ParseConfig(ReadFile(src.config_path));
  } else if (!src.scenario.empty()) {
    config = BuiltinScenario(src.scenario);
  } else {
    throw ConfigError("one of --config or --scenario is required");
  }
  if (!src.calibration_path.empty()) {
    calibration = ReadFile(src.calibration_path);
    config.needs = ParseCalibration(*calibration);
  }
  ValidateConfig(config);
  return config;
}

template <typename F>
int Guard(std::ostream& err, F&& body) {
  try {
    body();
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntimeError;
  }
}

}  // namespace

int CliMain(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"needsim: needs-driven agent-based epidemic and economy simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  Source run_src;
  std::uint64_t run_seed = 1;
  std::string run_out = DefaultOutDir();
  bool run_ledger = false;
  bool run_transmissions = false;
  auto* run = app.add_subcommand("run", "Run one simulation");
  AddSource(run, run_src);
  run->add_option("--seed", run_seed, "Seed")->capture_default_str();
  run->add_option("--out,-o", run_out, "Output directory")->capture_default_str();
  run->add_flag("--ledger", run_ledger, "Also write ledger.csv");
  run->add_flag("--transmissions", run_transmissions, "Also write transmissions.csv");

  Source batch_src;
  std::optional<int> batch_runs;
  std::optional<std::uint64_t> batch_base_seed;
  std::string batch_out = DefaultOutDir();
  int batch_parallel = 1;
  auto* batch = app.add_subcommand("batch", "Run seeded replications and aggregate");
  AddSource(batch, batch_src);
  batch->add_option("--runs", batch_runs, "Number of runs (default: config)");
  batch->add_option("--base-seed", batch_base_seed, "First seed (default: config)");
  batch->add_option("--out,-o", batch_out, "Output directory")->capture_default_str();
  batch->add_option("--parallel,-j", batch_parallel, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  Source validate_src;
  auto* validate = app.add_subcommand("validate", "Check a config and exit");
  AddSource(validate, validate_src);

  auto* scenarios = app.add_subcommand("scenarios", "Built-in scenarios");
  scenarios->require_subcommand(1);
  auto* list = scenarios->add_subcommand("list", "List built-in scenario names");
  std::string show_name;
  auto* show = scenarios->add_subcommand("show", "Print a built-in scenario as JSON");
  show->add_option("name", show_name, "Scenario name")->required();

  std::string manifest_path;
  std::string replay_out = DefaultOutDir();
  auto* replay = app.add_subcommand("replay", "Re-run a batch from its manifest");
  replay->add_option("--manifest,-m", manifest_path, "manifest.json")->required();
  replay->add_option("--out,-o", replay_out, "Output directory")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  if (run->parsed()) {
    return Guard(err, [&] {
      Manifest m;
      m.command = "run";
      m.config = Load(run_src, m.calibration);
      m.config.runs = 1;
      m.config.base_seed = run_seed;
      if (run_transmissions) m.config.log_transmissions = true;
      m.seeds = {run_seed};
      World world;
      BatchResult r;
      r.runs.push_back(RunSingle(m.config, run_seed, world));
      r.summary = Aggregate(r.runs);
      WriteOutputs(run_out, r, m);
      const std::filesystem::path dir(run_out);
      if (run_ledger) {
        std::ofstream f(dir / "ledger.csv", std::ios::binary);
        WriteLedgerCsv(f, world.ledger);
      }
      if (run_transmissions) {
        std::ofstream f(dir / "transmissions.csv", std::ios::binary);
        WriteTransmissionCsv(f, world.transmission_log);
      }
      out << "wrote " << run_out << '\n';
    });
  }
  if (batch->parsed()) {
    return Guard(err, [&] {
      Manifest m;
      m.config = Load(batch_src, m.calibration);
      if (batch_runs) m.config.runs = *batch_runs;
      if (batch_base_seed) m.config.base_seed = *batch_base_seed;
      ValidateConfig(m.config);
      m.parallel = batch_parallel;
      m.seeds = BatchSeeds(m.config);
      const BatchResult r = RunBatch(m.config, batch_parallel);
      WriteOutputs(batch_out, r, m);
      out << "wrote " << r.runs.size() << " runs to " << batch_out << '\n';
    });
  }
  if (validate->parsed()) {
    return Guard(err, [&] {
      std::optional<std::string> calibration;
      const ScenarioConfig c = Load(validate_src, calibration);
      out << "ok: " << c.name << '\n';
    });
  }
  if (list->parsed()) {
    for (const std::string& name : BuiltinScenarioNames()) out << name << '\n';
    return kExitOk;
  }
  if (show->parsed()) {
    return Guard(err, [&] { out << SerializeConfig(BuiltinScenario(show_name)); });
  }
  if (replay->parsed()) {
    return Guard(err, [&] {
      const Manifest m = ParseManifest(ReadFile(manifest_path));
      Replay(m, replay_out);
      out << "replayed " << m.seeds.size() << " runs to " << replay_out << '\n';
    });
  }
  return kExitOk;
}

}  // namespace needsim
