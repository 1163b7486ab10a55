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

#ifndef NEEDSIM_EPIDEMIC_H_
#define NEEDSIM_EPIDEMIC_H_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "needsim/rng.h"
#include "needsim/types.h"

namespace needsim {

struct World;

struct HealthState {
  Compartment compartment = Compartment::kS;
  int ticks_in_compartment = 0;
  // Set when the agent entered its compartment outside progression (seeding
  // or exposure); that tick does not count toward the dwell time.
  bool fresh = false;
  int incubation_ticks = 0;
  bool believes_sick = false;
  bool tested_positive = false;
  bool detected = false;
  // Entered O1 or O2 and has yet to go to the hospital.
  bool doctor_visit_pending = false;

  bool alive() const { return compartment != Compartment::kDead; }
  bool operator==(const HealthState&) const = default;
};

// Per-day probabilities for one infectious compartment.
struct ExitRates {
  double recover = 0.0;
  double die = 0.0;

  bool operator==(const ExitRates&) const = default;
};

struct EpidemicParams {
  int incubation_days_min = 2;
  int incubation_days_max = 4;
  // Chance that a symptomatic agent goes to the doctor rather than staying
  // home sick.
  double p_visit_doctor = 0.3;
  // Per-day chance of a late doctor visit from I2.
  double p_late_visit = 0.05;
  // Indexed by I1, I2, O1, O2.
  std::array<ExitRates, 4> exit{{{0.12, 0.0}, {0.10, 0.01}, {0.08, 0.015}, {0.08, 0.02}}};
  // Multiplies the per-day death probability.
  std::array<double, kNumAgeGroups> death_multiplier{0.1, 0.2, 1.0, 3.0};
  // Multiplies the transmission factor for a susceptible of each age group.
  std::array<double, kNumAgeGroups> susceptibility{0.6, 1.0, 1.0, 1.0};
  double p_waning = 0.0;
  // Global transmissibility scale applied to every place.
  double delta = 0.6;
  double asymptomatic_fraction = 0.3;
  // density_mod = min(1, density_scale * occupants / capacity).
  double density_scale = 1.0;
  int initial_infected = 1;

  bool operator==(const EpidemicParams&) const = default;
};

// Throws std::invalid_argument naming the offending parameter.
void ValidateEpidemicParams(const EpidemicParams& p);

std::size_t ExitIndex(Compartment c);

// Converts a per-day probability so that ticks_per_day independent ticks give
// the same daily marginal.
double PerTickProbability(double per_day, int ticks_per_day);

double DensityModifier(int occupants, int capacity, double density_scale);

// 1 - (1 - beta)^infectors.
double ExposureProbability(double beta, int infectors);

struct TransmissionSite {
  PlaceId id = kNoPlace;
  PlaceKind kind = PlaceKind::kHome;
  double contagion_base = 0.0;
  int capacity = 1;
};

struct Occupant {
  AgentId id = 0;
  Compartment compartment = Compartment::kS;
  AgeGroup age_group = AgeGroup::kWorker;
};

struct TransmissionEvent {
  PlaceId place = kNoPlace;
  Tick tick = 0;
  int infectors = 0;
  std::vector<AgentId> newly_exposed;

  bool operator==(const TransmissionEvent&) const = default;
};

// Counts infectors on site. O1/O2 agents are isolated and only transmit
// inside hospitals.
int CountInfectors(PlaceKind kind, std::span<const Occupant> occupants);

// beta = delta * contagion_base * contagion_multiplier * density_mod.
double SiteBeta(const TransmissionSite& site, int occupants, const EpidemicParams& params,
                double contagion_multiplier);

// Returns susceptible occupants that become exposed, in occupant order.
std::vector<AgentId> PlaceTransmission(const TransmissionSite& site,
                                       std::span<const Occupant> occupants,
                                       const EpidemicParams& params,
                                       double contagion_multiplier, Rng& rng);

// Moves a susceptible into E and samples its incubation time.
void Expose(HealthState& health, const EpidemicParams& params, int ticks_per_day, Rng& rng);

struct Transition {
  Compartment from = Compartment::kS;
  Compartment to = Compartment::kS;
};

// Advances one tick. Returns the transition taken, if any (from == to when
// the compartment did not change).
Transition ProgressDisease(HealthState& health, AgeGroup age_group,
                           const EpidemicParams& params, int ticks_per_day, Rng& rng);

// True for every edge of the compartment graph.
bool IsAllowedTransition(Compartment from, Compartment to);

enum class TestingMode : std::uint8_t { kSymptomatic, kRandom };

struct TestingParams {
  TestingMode mode = TestingMode::kSymptomatic;
  int capacity_per_day = 0;
  double sensitivity = 1.0;

  bool operator==(const TestingParams&) const = default;
};

// n uniformly chosen susceptibles become exposed. Throws
// std::invalid_argument when n exceeds the susceptible count.
void SeedInfection(World& world, int n);

// Samples eligible agents up to capacity; infectious ones that test positive
// become detected. Returns their ids in ascending order.
std::vector<AgentId> RunTests(World& world, const TestingParams& testing, Rng& rng);

using Census = std::array<int, kNumCompartments>;
Census EpiCensus(const World& world);

}  // namespace needsim

#endif  // NEEDSIM_EPIDEMIC_H_
