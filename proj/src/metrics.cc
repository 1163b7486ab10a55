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

#include "needsim/metrics.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace needsim {
namespace {

constexpr std::size_t kIndexColumns = 3;  // tick, day, segment

std::vector<MetricColumn> BuildColumns() {
  std::vector<MetricColumn> cols;
  cols.push_back({"tick", [](const TickMetrics& m) -> MetricValue { return m.tick; }});
  cols.push_back({"day", [](const TickMetrics& m) -> MetricValue { return m.day; }});
  cols.push_back({"segment", [](const TickMetrics& m) -> MetricValue {
                    return std::int64_t{m.segment};
                  }});
  // Captureless lambdas cannot close over the loop index, so each array
  // entry gets its own instantiation.
  [&]<std::size_t... I>(std::index_sequence<I...>) {
    (cols.push_back({std::string(ToString(kAllCompartments[I])),
                     [](const TickMetrics& m) -> MetricValue {
                       return std::int64_t{m.compartments[I]};
                     }}),
     ...);
  }(std::make_index_sequence<kNumCompartments>{});
  cols.push_back({"infected", [](const TickMetrics& m) -> MetricValue {
                    return std::int64_t{m.infected};
                  }});
  [&]<std::size_t... I>(std::index_sequence<I...>) {
    (cols.push_back({"act_" + std::string(ToString(kAllActivityKinds[I])),
                     [](const TickMetrics& m) -> MetricValue {
                       return std::int64_t{m.activities[I]};
                     }}),
     ...);
  }(std::make_index_sequence<kNumActivityKinds>{});
  [&]<std::size_t... I>(std::index_sequence<I...>) {
    (cols.push_back({"occ_" + std::string(ToString(kAllPlaceKinds[I])),
                     [](const TickMetrics& m) -> MetricValue {
                       return std::int64_t{m.occupancy[I]};
                     }}),
     ...);
  }(std::make_index_sequence<kNumPlaceKinds>{});
  [&]<std::size_t... I>(std::index_sequence<I...>) {
    (cols.push_back({"wealth_" + std::string(ToString(kAllAgeGroups[I])),
                     [](const TickMetrics& m) -> MetricValue { return m.mean_wealth[I]; }}),
     ...);
  }(std::make_index_sequence<kNumAgeGroups>{});
  cols.push_back({"household_wealth", [](const TickMetrics& m) -> MetricValue {
                    return m.mean_household_wealth;
                  }});
  cols.push_back({"shop_wealth_essential_shop", [](const TickMetrics& m) -> MetricValue {
                    return m.essential_shop_wealth;
                  }});
  cols.push_back({"shop_wealth_nonessential_shop", [](const TickMetrics& m) -> MetricValue {
                    return m.nonessential_shop_wealth;
                  }});
  cols.push_back({"shop_wealth_leisure", [](const TickMetrics& m) -> MetricValue {
                    return m.leisure_wealth;
                  }});
  cols.push_back({"government_reserves", [](const TickMetrics& m) -> MetricValue {
                    return m.government_reserves;
                  }});
  cols.push_back({"total_money", [](const TickMetrics& m) -> MetricValue {
                    return m.total_money;
                  }});
  cols.push_back({"velocity", [](const TickMetrics& m) -> MetricValue { return m.velocity; }});
  cols.push_back({"detected_total", [](const TickMetrics& m) -> MetricValue {
                    return std::int64_t{m.detected_total};
                  }});
  cols.push_back({"new_exposures", [](const TickMetrics& m) -> MetricValue {
                    return std::int64_t{m.new_exposures};
                  }});
  cols.push_back({"ever_exposed", [](const TickMetrics& m) -> MetricValue {
                    return std::int64_t{m.ever_exposed};
                  }});
  cols.push_back({"policies_active", [](const TickMetrics& m) -> MetricValue {
                    return std::int64_t{m.policies_active};
                  }});
  cols.push_back({"policy_activations", [](const TickMetrics& m) -> MetricValue {
                    return std::int64_t{m.policy_activations};
                  }});
  cols.push_back({"insolvent_nonessential_shops", [](const TickMetrics& m) -> MetricValue {
                    return std::int64_t{m.insolvent_nonessential_shops};
                  }});
  cols.push_back({"caregiver_violations", [](const TickMetrics& m) -> MetricValue {
                    return std::int64_t{m.caregiver_violations};
                  }});
  return cols;
}

}  // namespace

const std::vector<MetricColumn>& MetricColumns() {
  static const std::vector<MetricColumn> columns = BuildColumns();
  return columns;
}

double AsDouble(const MetricValue& v) {
  return std::visit([](auto x) { return static_cast<double>(x); }, v);
}

std::string FormatValue(const MetricValue& v) {
  char buf[64];
  auto res = std::visit(
      [&](auto x) { return std::to_chars(buf, buf + sizeof(buf), x); }, v);
  return std::string(buf, res.ptr);
}

RunScalars ComputeScalars(const RunMetrics& run) {
  RunScalars s;
  for (const auto& m : run.ticks) {
    if (m.infected > s.peak_infected) {
      s.peak_infected = m.infected;
      s.peak_tick = static_cast<double>(m.tick);
    }
  }
  if (!run.ticks.empty()) {
    s.total_deaths = run.ticks.back().compartments[Index(Compartment::kDead)];
    s.ever_exposed = run.ticks.back().ever_exposed;
  }
  return s;
}

Stat Summarize(std::span<const double> values) {
  Stat s;
  const auto n = values.size();
  if (n == 0) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(n);
  if (n > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(n - 1));
    s.ci95 = 1.96 * s.sd / std::sqrt(static_cast<double>(n));
  }
  return s;
}

bool Overlaps(const Stat& a, const Stat& b) {
  return a.mean - a.ci95 <= b.mean + b.ci95 && b.mean - b.ci95 <= a.mean + a.ci95;
}

const Stat& BatchSummary::Scalar(std::string_view name) const {
  for (const auto& [n, s] : scalars) {
    if (n == name) return s;
  }
  throw std::out_of_range("no scalar summary named " + std::string(name));
}

std::size_t BatchSummary::MetricIndex(std::string_view name) const {
  for (std::size_t i = 0; i < metric_names.size(); ++i) {
    if (metric_names[i] == name) return i;
  }
  throw std::out_of_range("no metric named " + std::string(name));
}

BatchSummary Aggregate(std::span<const RunMetrics> runs) {
  BatchSummary out;
  out.runs = static_cast<int>(runs.size());
  const auto& cols = MetricColumns();
  for (std::size_t c = kIndexColumns; c < cols.size(); ++c) {
    out.metric_names.push_back(cols[c].name);
  }
  if (runs.empty()) return out;
  const std::size_t ticks = runs.front().ticks.size();
  for (const auto& r : runs) {
    if (r.ticks.size() != ticks) throw std::invalid_argument("runs differ in length");
  }
  std::vector<double> column(runs.size());
  out.per_tick.resize(ticks);
  for (std::size_t t = 0; t < ticks; ++t) {
    auto& row = out.per_tick[t];
    row.reserve(cols.size() - kIndexColumns);
    for (std::size_t c = kIndexColumns; c < cols.size(); ++c) {
      for (std::size_t r = 0; r < runs.size(); ++r) {
        column[r] = AsDouble(cols[c].get(runs[r].ticks[t]));
      }
      row.push_back(Summarize(column));
    }
  }
  std::vector<RunScalars> scalars;
  for (const auto& r : runs) scalars.push_back(ComputeScalars(r));
  auto add = [&](const char* name, double RunScalars::*field) {
    for (std::size_t r = 0; r < runs.size(); ++r) column[r] = scalars[r].*field;
    out.scalars.emplace_back(name, Summarize(column));
  };
  add("peak_infected", &RunScalars::peak_infected);
  add("peak_tick", &RunScalars::peak_tick);
  add("total_deaths", &RunScalars::total_deaths);
  add("ever_exposed", &RunScalars::ever_exposed);
  return out;
}

}  // namespace needsim
