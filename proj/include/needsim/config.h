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

#ifndef NEEDSIM_CONFIG_H_
#define NEEDSIM_CONFIG_H_

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "needsim/economy.h"
#include "needsim/epidemic.h"
#include "needsim/model.h"
#include "needsim/needs.h"
#include "needsim/policy.h"

namespace needsim {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigSyntaxError : public ConfigError {
 public:
  ConfigSyntaxError(int line, int column, const std::string& detail);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class UnknownKeyError : public ConfigError {
 public:
  explicit UnknownKeyError(const std::string& path);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

class ConstraintError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

enum class SegmentType : std::uint8_t { kWork, kFree, kRest };
std::string_view ToString(SegmentType t);

// One entry per tick of the day.
struct Schedule {
  std::vector<SegmentType> weekday{SegmentType::kWork, SegmentType::kWork,
                                   SegmentType::kFree, SegmentType::kRest};
  std::vector<SegmentType> weekend{SegmentType::kFree, SegmentType::kFree,
                                   SegmentType::kFree, SegmentType::kRest};

  SegmentType At(int segment_index, bool weekend_day) const {
    return (weekend_day ? weekend : weekday)[static_cast<std::size_t>(segment_index)];
  }
  bool HasWork(bool weekend_day) const;

  bool operator==(const Schedule&) const = default;
};

// Member counts for one archetype. Each list is sampled uniformly; an empty
// list means zero members of that group.
struct HouseholdShape {
  int adults = 0;
  std::vector<int> children;
  std::vector<int> students;
  std::vector<int> retirees;

  int MinSize() const;
  double MeanSize() const;
  bool operator==(const HouseholdShape&) const = default;
};

struct PlaceKindParams {
  int count = 0;
  double contagion_base = 0.0;
  int capacity = 1;

  bool operator==(const PlaceKindParams&) const = default;
};

struct TraitRanges {
  double risk_avoidance_min = 0.0;
  double risk_avoidance_max = 1.0;
  double compliance_min = 0.2;
  double compliance_max = 1.0;
  // Importance of each need is scaled by a factor in [1 - j, 1 + j].
  double importance_jitter = 0.3;

  bool operator==(const TraitRanges&) const = default;
};

struct PopulationParams {
  int target = 330;
  int min_population = 1;
  int max_population = 2500;
  // Share of the target population living in each household archetype.
  std::array<double, kNumHouseholdKinds> distribution{0.45, 0.15, 0.10, 0.15, 0.15};
  std::array<HouseholdShape, kNumHouseholdKinds> shapes{
      HouseholdShape{2, {1, 2, 3}, {}, {}},
      HouseholdShape{0, {}, {3, 4}, {}},
      HouseholdShape{0, {}, {}, {8}},
      HouseholdShape{2, {1, 2, 3}, {}, {1, 2}},
      HouseholdShape{2, {1, 2}, {}, {}},
  };
  double unemployment_fraction = 0.05;
  // Share of workplace employees whose job can be done from home.
  double telework_fraction = 0.6;
  double commuter_fraction = 0.3;
  double cluster_mean_size = 6.0;
  // Relative chance that a worker is employed by a place of each kind.
  std::array<double, kNumPlaceKinds> employer_weights{0.0, 0.15, 0.25, 0.30, 0.10, 0.10, 0.10, 0.0};
  // Homes are generated per household; their count is ignored.
  std::array<PlaceKindParams, kNumPlaceKinds> places{
      PlaceKindParams{0, 0.06, 1},     PlaceKindParams{3, 0.02, 40},
      PlaceKindParams{6, 0.03, 25},    PlaceKindParams{6, 0.025, 20},
      PlaceKindParams{2, 0.02, 60},    PlaceKindParams{1, 0.03, 40},
      PlaceKindParams{5, 0.04, 20},    PlaceKindParams{1, 0.01, 80}};
  int universities = 1;
  TraitRanges traits;

  bool operator==(const PopulationParams&) const = default;
};

struct ScenarioConfig {
  std::string name = "custom";
  int ticks_total = 480;
  int ticks_per_day = 4;
  std::uint64_t base_seed = 1;
  int runs = 40;
  bool log_transmissions = false;
  PopulationParams population;
  Schedule schedule;
  NeedsCalibration needs = DefaultNeedsCalibration();
  EpidemicParams epidemic;
  EconomyParams economy;
  std::vector<PolicySpec> policies;

  bool operator==(const ScenarioConfig&) const = default;
};

// Parses the JSON config format. Missing keys take their defaults; an empty
// document yields the default config. Throws ConfigSyntaxError,
// UnknownKeyError or ConstraintError.
ScenarioConfig ParseConfig(std::string_view text);

// Fully resolved JSON; ParseConfig(SerializeConfig(c)) == c.
std::string SerializeConfig(const ScenarioConfig& config);

// Same structure as the "needs" section of a config.
NeedsCalibration ParseCalibration(std::string_view text);
std::string SerializeCalibration(const NeedsCalibration& cal);

// Throws ConstraintError.
void ValidateConfig(const ScenarioConfig& config);

std::vector<std::string> BuiltinScenarioNames();
// Throws ConfigError for an unknown name.
ScenarioConfig BuiltinScenario(std::string_view name);

}  // namespace needsim

#endif  // NEEDSIM_CONFIG_H_
