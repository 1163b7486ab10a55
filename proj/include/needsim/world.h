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

#ifndef NEEDSIM_WORLD_H_
#define NEEDSIM_WORLD_H_

#include <array>
#include <cstdint>
#include <vector>

#include "needsim/clock.h"
#include "needsim/config.h"
#include "needsim/economy.h"
#include "needsim/epidemic.h"
#include "needsim/metrics.h"
#include "needsim/model.h"
#include "needsim/needs.h"
#include "needsim/policy.h"
#include "needsim/rng.h"

namespace needsim {

struct CaregiverViolation {
  enum class Reason : std::uint8_t {
    // The designated caregiver chose an activity away from home.
    kBrokePolicy,
    // No living adult was available to stay home.
    kNoAvailableAdult,
  };
  Tick tick = 0;
  int household = -1;
  AgentId agent = -1;
  Reason reason = Reason::kBrokePolicy;
  // Caregiver compliance before and after the choice, for kBrokePolicy.
  double compliance_before = 0.0;
  double compliance_after = 0.0;

  bool operator==(const CaregiverViolation&) const = default;
};

struct World {
  ScenarioConfig config;
  Clock clock;
  // False until the first tick has run; tick 0 is the first simulated tick.
  bool started = false;
  std::vector<Agent> agents;
  std::vector<Place> places;
  std::vector<Household> households;
  Government government;
  Ledger ledger;
  std::vector<std::vector<AgentId>> social_clusters;
  // Leisure place each cluster meets at.
  std::vector<PlaceId> cluster_leisure;
  PolicySet active_policies;
  Rng population_rng;
  Rng epidemic_rng;
  Rng behavior_rng;
  Rng testing_rng;

  std::uint64_t seed = 0;
  int initial_population = 0;
  Money initial_money = 0;
  int ever_exposed = 0;
  int detected_total = 0;
  Tick first_detection_tick = -1;
  // Purchase volume per day, indexed by day.
  std::vector<Money> purchases_by_day;
  double last_velocity = 0.0;
  std::vector<CaregiverViolation> caregiver_violations;
  std::vector<TransmissionEvent> transmission_log;
  // Caregiver assignment for this tick, one entry per household hosting a
  // school-age child while schools are closed.
  std::vector<CaregiverAssignment> caregivers;

  std::vector<PlaceId> PlacesOfKind(PlaceKind kind) const;
  // The home an agent lives in this week.
  PlaceId ResidenceOf(const Agent& agent) const;
  SegmentType CurrentSegmentType() const;
  bool operator==(const World&) const = default;
};

// Builds households, places, employers and social clusters. Throws
// ConstraintError for an invalid distribution or a population too small for
// a configured household kind.
World GeneratePopulation(const ScenarioConfig& config, std::uint64_t seed);

// Brings food safety and the financial subneeds in line with stock and
// wealth, then recomputes the composite.
void RefreshDerivedNeeds(const World& world, Agent& agent);

// Physically possible activities for the agent right now, before policy.
ActivityContext AvailableContext(const World& world, const Agent& agent);

// Runs one tick: clock, triggers, deliberation and movement, transmission,
// disease progression, end-of-day settlement, metrics.
TickMetrics StepWorld(World& world);

}  // namespace needsim

#endif  // NEEDSIM_WORLD_H_
