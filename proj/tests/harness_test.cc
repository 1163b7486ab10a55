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

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "needsim/cli.h"
#include "needsim/harness.h"

namespace needsim {
namespace {

namespace fs = std::filesystem;

std::string Slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

fs::path TempDir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("needsim_test_" + name);
  fs::remove_all(p);
  return p;
}

ScenarioConfig Small() {
  ScenarioConfig c;
  c.population.target = 120;
  c.ticks_total = 64;
  c.runs = 4;
  c.epidemic.initial_infected = 3;
  return c;
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

TEST_SUITE("harness") {
  TEST_CASE("csv quoting") {
    CHECK(CsvField("plain") == "plain");
    CHECK(CsvField("a,b") == "\"a,b\"");
    CHECK(CsvField("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(CsvField("two\nlines") == "\"two\nlines\"");
    CHECK(SplitCsvLine(CsvField("x,\"y\"")) == std::vector<std::string>{"x,\"y\""});
  }

  TEST_CASE("zero-tick run writes only the header") {
    ScenarioConfig c = Small();
    c.ticks_total = 0;
    std::ostringstream s;
    WriteRunCsv(s, RunSingle(c, 1));
    const std::string out = s.str();
    CHECK(std::count(out.begin(), out.end(), '\n') == 1);
    CHECK(out.rfind("tick,day,segment,", 0) == 0);
  }

  TEST_CASE("run csv rows are newline terminated with a fixed column count") {
    std::ostringstream s;
    WriteRunCsv(s, RunSingle(Small(), 1));
    std::istringstream in(s.str());
    std::string line;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
      CHECK(SplitCsvLine(line).size() == MetricColumns().size());
      ++rows;
    }
    CHECK(rows == 65);
    CHECK(s.str().back() == '\n');
  }

  TEST_CASE("same (config, seed) gives identical metrics") {
    CHECK(RunSingle(Small(), 9) == RunSingle(Small(), 9));
  }

  TEST_CASE("parallel batch equals sequential batch") {
    const BatchResult a = RunBatch(Small(), 1);
    const BatchResult b = RunBatch(Small(), 3);
    CHECK(a == b);
    CHECK(a.runs.size() == 4);
    CHECK(a.runs[2].seed == Small().base_seed + 2);
  }

  TEST_CASE("summary agrees with a recomputation from the run files") {
    const ScenarioConfig c = Small();
    const BatchResult r = RunBatch(c, 2);
    const fs::path dir = TempDir("summary");
    Manifest m;
    m.config = c;
    m.seeds = BatchSeeds(c);
    WriteOutputs(dir, r, m);

    // Read every run file back and recompute mean/sd of `infected` at tick 40.
    std::vector<double> values;
    for (int i = 0; i < c.runs; ++i) {
      std::istringstream in(Slurp(dir / ("run_" + std::to_string(i) + ".csv")));
      std::string line;
      std::getline(in, line);
      const auto header = SplitCsvLine(line);
      const auto col = static_cast<std::size_t>(
          std::find(header.begin(), header.end(), "infected") - header.begin());
      for (int t = 0; t <= 40; ++t) std::getline(in, line);
      values.push_back(std::stod(SplitCsvLine(line)[col]));
    }
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(values.size() - 1));

    std::istringstream summary(Slurp(dir / "summary.csv"));
    std::string line;
    std::getline(summary, line);
    CHECK(line == "scope,tick,metric,mean,sd,ci95_half_width");
    bool found = false;
    while (std::getline(summary, line)) {
      const auto f = SplitCsvLine(line);
      if (f[0] == "tick" && f[1] == "40" && f[2] == "infected") {
        found = true;
        CHECK(std::stod(f[3]) == doctest::Approx(mean));
        CHECK(std::stod(f[4]) == doctest::Approx(sd));
        CHECK(std::stod(f[5]) == doctest::Approx(1.96 * sd / 2.0));
      }
    }
    CHECK(found);
  }

  TEST_CASE("manifest round trip and replay are exact") {
    const ScenarioConfig c = Small();
    Manifest m;
    m.config = c;
    m.seeds = BatchSeeds(c);
    m.parallel = 2;
    m.calibration = "{\n  \"needs\": {}\n}\n";
    CHECK(ParseManifest(SerializeManifest(m)) == m);

    const fs::path a = TempDir("replay_a");
    const fs::path b = TempDir("replay_b");
    WriteOutputs(a, RunBatch(c, 2), m);
    Replay(ParseManifest(Slurp(a / "manifest.json")), b);
    for (const auto& entry : fs::directory_iterator(a)) {
      CHECK(Slurp(entry.path()) == Slurp(b / entry.path().filename()));
    }
  }

  TEST_CASE("replay refuses a different version") {
    Manifest m;
    m.version = "0.0.0-other";
    CHECK_THROWS_AS(Replay(m, TempDir("replay_v")), ConfigError);
  }

  TEST_CASE("cli exit codes") {
    std::ostringstream out;
    std::ostringstream err;
    CHECK(CliMain({"scenarios", "list"}, out, err) == kExitOk);
    CHECK(out.str().find("lockdown-subsidy") != std::string::npos);
    CHECK(CliMain({"validate", "--scenario", "baseline"}, out, err) == kExitOk);
    CHECK(CliMain({"run", "--nope"}, out, err) == kExitConfigError);
    CHECK(CliMain({"validate", "--config", "/nonexistent.json"}, out, err) == kExitConfigError);
    CHECK(CliMain({"validate", "--scenario", "nope"}, out, err) == kExitConfigError);

    const fs::path bad = TempDir("bad_cfg");
    fs::create_directories(bad);
    std::ofstream(bad / "c.json") << R"({"epidemic": {"initial_infected": 100000}})";
    CHECK(CliMain({"validate", "--config", (bad / "c.json").string()}, out, err) ==
          kExitConfigError);
    std::ofstream(bad / "s.json") << R"({"population": {"target": 40}})";
    // Config is valid but too small for the retirement home: a runtime
    // generation error reported as a configuration problem.
    CHECK(CliMain({"run", "--config", (bad / "s.json").string(), "--out",
                   (bad / "o").string()},
                  out, err) == kExitConfigError);
  }

  TEST_CASE("cli run twice gives byte-identical files") {
    const fs::path a = TempDir("cli_a");
    const fs::path b = TempDir("cli_b");
    const fs::path cfg = TempDir("cli_cfg");
    fs::create_directories(cfg);
    std::ofstream(cfg / "c.json") << SerializeConfig(Small());
    std::ostringstream out;
    std::ostringstream err;
    for (const fs::path& d : {a, b}) {
      REQUIRE(CliMain({"run", "--config", (cfg / "c.json").string(), "--seed", "5", "--out",
                       d.string(), "--ledger"},
                      out, err) == kExitOk);
    }
    CHECK(Slurp(a / "run_0.csv") == Slurp(b / "run_0.csv"));
    CHECK(Slurp(a / "ledger.csv") == Slurp(b / "ledger.csv"));
    CHECK(Slurp(a / "manifest.json") == Slurp(b / "manifest.json"));
  }
}

}  // namespace
}  // namespace needsim
