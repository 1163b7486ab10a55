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

#include <fstream>
#include <sstream>

#include "doctest.h"
#include "needsim/config.h"

namespace needsim {
namespace {

TEST_SUITE("config") {
  TEST_CASE("empty document is the default config") {
    CHECK(ParseConfig("") == ScenarioConfig{});
    CHECK(ParseConfig("{}") == ScenarioConfig{});
  }

  TEST_CASE("partial sections keep the other defaults") {
    const ScenarioConfig c = ParseConfig(R"({"epidemic": {"delta": 0.25}, "runs": 3})");
    CHECK(c.epidemic.delta == 0.25);
    CHECK(c.runs == 3);
    CHECK(c.epidemic.p_visit_doctor == EpidemicParams{}.p_visit_doctor);
  }

  TEST_CASE("round trip for every built-in scenario") {
    for (const std::string& name : BuiltinScenarioNames()) {
      const ScenarioConfig c = BuiltinScenario(name);
      const std::string text = SerializeConfig(c);
      const ScenarioConfig back = ParseConfig(text);
      CHECK(back == c);
      CHECK(SerializeConfig(back) == text);
    }
  }

  TEST_CASE("round trip keeps awkward doubles exact") {
    ScenarioConfig c;
    c.epidemic.delta = 0.1 + 0.2;
    c.needs.gains.conformity_scale = 1.0 / 3.0;
    PolicySpec s;
    s.kind = PolicyKind::kTesting;
    s.trigger = ParseCondition("infected_fraction >= 0.07");
    s.release = ParseCondition("tick >= 300");
    s.testing = TestingParams{TestingMode::kRandom, 12, 0.85};
    c.policies.push_back(s);
    CHECK(ParseConfig(SerializeConfig(c)) == c);
  }

  TEST_CASE("syntax errors carry line and column") {
    try {
      ParseConfig("{\n  \"runs\": 3,\n  \"name\" \"x\"\n}");
      FAIL("expected ConfigSyntaxError");
    } catch (const ConfigSyntaxError& e) {
      CHECK(e.line() == 3);
      CHECK(e.column() >= 9);
    }
  }

  TEST_CASE("unknown keys are rejected with their path") {
    try {
      ParseConfig(R"({"epidemic": {"delta": 1, "gamma": 2}})");
      FAIL("expected UnknownKeyError");
    } catch (const UnknownKeyError& e) {
      CHECK(e.path() == "epidemic.gamma");
    }
    CHECK_THROWS_AS(ParseConfig(R"({"bogus": 1})"), UnknownKeyError);
    CHECK_THROWS_AS(ParseConfig(R"({"needs": {"gains": {"activities": {"nap": {}}}}})"),
                    UnknownKeyError);
  }

  TEST_CASE("constraint violations") {
    CHECK_THROWS_AS(ParseConfig(R"({"ticks_per_day": 0})"), ConstraintError);
    CHECK_THROWS_AS(ParseConfig(R"({"runs": "many"})"), ConstraintError);
    CHECK_THROWS_AS(ParseConfig(R"({"population": {"target": 5000}})"), ConstraintError);
    CHECK_THROWS_AS(ParseConfig(R"({"population": {"households": {"family": {"share": 0.9}}}})"),
                    ConstraintError);
    CHECK_THROWS_AS(ParseConfig(R"({"policies": [{"kind": "curfew"}]})"), ConstraintError);
    CHECK_THROWS_AS(ParseConfig(R"({"policies": [{"kind": "lockdown", "trigger": "x"}]})"),
                    ConstraintError);
    CHECK_THROWS_AS(ParseConfig(R"({"schedule": {"weekday": ["work", "rest"]}})"),
                    ConstraintError);
  }

  TEST_CASE("error classes are distinct") {
    int kinds = 0;
    try { ParseConfig("{"); } catch (const ConfigSyntaxError&) { ++kinds; }
    try { ParseConfig(R"({"x": 1})"); } catch (const UnknownKeyError&) { ++kinds; }
    try { ParseConfig(R"({"runs": 0})"); } catch (const ConstraintError&) { ++kinds; }
    CHECK(kinds == 3);
  }

  TEST_CASE("calibration file") {
    const NeedsCalibration def = DefaultNeedsCalibration();
    CHECK(ParseCalibration("{}") == def);
    const NeedsCalibration c =
        ParseCalibration(R"({"needs": {"belonging": {"importance": 0.5}}})");
    CHECK(c.need[Index(Need::kBelonging)].importance == 0.5);
    CHECK(ParseCalibration(SerializeCalibration(c)) == c);
    CHECK_THROWS_AS(
        ParseCalibration(R"({"gains": {"activities": {"visit_doctor": {"survival": 0.9}}}})"),
        ConstraintError);
  }

  TEST_CASE("shipped config files parse") {
    for (const char* name : {"baseline", "close-schools", "work-at-home", "lockdown-no-subsidy",
                             "lockdown-subsidy"}) {
      std::ifstream f(std::string(NEEDSIM_SOURCE_DIR) + "/configs/" + name + ".json");
      REQUIRE(f.good());
      std::stringstream s;
      s << f.rdbuf();
      CHECK(ParseConfig(s.str()) == BuiltinScenario(name));
    }
  }

  TEST_CASE("unknown built-in") {
    CHECK_THROWS_AS(BuiltinScenario("nope"), ConfigError);
  }
}

}  // namespace
}  // namespace needsim
