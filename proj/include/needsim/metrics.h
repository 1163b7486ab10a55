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

#ifndef NEEDSIM_METRICS_H_
#define NEEDSIM_METRICS_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "needsim/policy.h"
#include "needsim/types.h"

namespace needsim {

struct TickMetrics {
  Tick tick = 0;
  std::int64_t day = 0;
  int segment = 0;
  std::array<int, kNumCompartments> compartments{};
  int infected = 0;
  std::array<int, kNumActivityKinds> activities{};
  std::array<int, kNumPlaceKinds> occupancy{};
  std::array<double, kNumAgeGroups> mean_wealth{};
  double mean_household_wealth = 0.0;
  Money essential_shop_wealth = 0;
  Money nonessential_shop_wealth = 0;
  Money leisure_wealth = 0;
  Money government_reserves = 0;
  Money total_money = 0;
  // Velocity of the most recently settled day.
  double velocity = 0.0;
  int detected_total = 0;
  int new_exposures = 0;
  int ever_exposed = 0;
  int policies_active = 0;
  int policy_activations = 0;
  int insolvent_nonessential_shops = 0;
  int caregiver_violations = 0;

  bool operator==(const TickMetrics&) const = default;
};

using MetricValue = std::variant<std::int64_t, double>;

struct MetricColumn {
  std::string name;
  MetricValue (*get)(const TickMetrics&);
};

// Fixed CSV column order for per-run output.
const std::vector<MetricColumn>& MetricColumns();

double AsDouble(const MetricValue& v);

// Shortest decimal text that parses back to the same value.
std::string FormatValue(const MetricValue& v);

struct RunMetrics {
  std::uint64_t seed = 0;
  std::vector<TickMetrics> ticks;
  std::vector<PolicyEvent> policy_log;

  bool operator==(const RunMetrics&) const = default;
};

struct RunScalars {
  double peak_infected = 0.0;
  double peak_tick = 0.0;
  double total_deaths = 0.0;
  double ever_exposed = 0.0;
};

RunScalars ComputeScalars(const RunMetrics& run);

struct Stat {
  double mean = 0.0;
  double sd = 0.0;
  // Normal-approximation 95% half-width: 1.96 * sd / sqrt(n).
  double ci95 = 0.0;

  bool operator==(const Stat&) const = default;
};

Stat Summarize(std::span<const double> values);

// True when the two 95% intervals share at least one point.
bool Overlaps(const Stat& a, const Stat& b);

struct BatchSummary {
  int runs = 0;
  // Per-run metric columns, excluding tick/day/segment.
  std::vector<std::string> metric_names;
  // per_tick[t][m]
  std::vector<std::vector<Stat>> per_tick;
  std::vector<std::pair<std::string, Stat>> scalars;

  const Stat& Scalar(std::string_view name) const;
  std::size_t MetricIndex(std::string_view name) const;
  bool operator==(const BatchSummary&) const = default;
};

// Folds runs in the order given.
BatchSummary Aggregate(std::span<const RunMetrics> runs);

}  // namespace needsim

#endif  // NEEDSIM_METRICS_H_
