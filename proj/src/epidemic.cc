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

#include "needsim/epidemic.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "needsim/world.h"

namespace needsim {
namespace {

bool IsProbability(double p) { return p >= 0.0 && p <= 1.0; }

void EnterCompartment(HealthState& h, Compartment c) {
  h.compartment = c;
  h.ticks_in_compartment = 0;
  h.fresh = false;
}

}  // namespace

void ValidateEpidemicParams(const EpidemicParams& p) {
  auto fail = [](const std::string& what) {
    throw std::invalid_argument("epidemic: " + what);
  };
  if (p.incubation_days_min < 0 || p.incubation_days_max < p.incubation_days_min) {
    fail("incubation days must satisfy 0 <= min <= max");
  }
  if (!IsProbability(p.p_visit_doctor)) fail("p_visit_doctor must be a probability");
  if (!IsProbability(p.p_late_visit)) fail("p_late_visit must be a probability");
  if (!IsProbability(p.p_waning)) fail("p_waning must be a probability");
  if (!IsProbability(p.asymptomatic_fraction)) fail("asymptomatic_fraction must be a probability");
  for (const auto& e : p.exit) {
    if (!IsProbability(e.recover) || !IsProbability(e.die)) fail("exit rates must be probabilities");
    if (e.recover + e.die > 1.0) fail("recover + die must not exceed 1");
  }
  for (double m : p.death_multiplier) {
    if (!(m >= 0.0)) fail("death multipliers must be >= 0");
  }
  for (double s : p.susceptibility) {
    if (!(s >= 0.0)) fail("susceptibility multipliers must be >= 0");
  }
  if (!(p.delta >= 0.0)) fail("delta must be >= 0");
  if (!(p.density_scale >= 0.0)) fail("density_scale must be >= 0");
  if (p.initial_infected < 0) fail("initial_infected must be >= 0");
}

std::size_t ExitIndex(Compartment c) {
  switch (c) {
    case Compartment::kI1: return 0;
    case Compartment::kI2: return 1;
    case Compartment::kO1: return 2;
    case Compartment::kO2: return 3;
    default: throw std::logic_error("compartment has no exit rates");
  }
}

double PerTickProbability(double per_day, int ticks_per_day) {
  if (per_day <= 0.0) return 0.0;
  if (per_day >= 1.0) return 1.0;
  return 1.0 - std::pow(1.0 - per_day, 1.0 / ticks_per_day);
}

double DensityModifier(int occupants, int capacity, double density_scale) {
  if (capacity <= 0) return 1.0;
  return std::min(1.0, density_scale * occupants / capacity);
}

double ExposureProbability(double beta, int infectors) {
  if (infectors <= 0 || beta <= 0.0) return 0.0;
  if (beta >= 1.0) return 1.0;
  return 1.0 - std::pow(1.0 - beta, infectors);
}

int CountInfectors(PlaceKind kind, std::span<const Occupant> occupants) {
  int n = 0;
  for (const auto& o : occupants) {
    switch (o.compartment) {
      case Compartment::kI1:
      case Compartment::kI2:
        ++n;
        break;
      case Compartment::kO1:
      case Compartment::kO2:
        if (kind == PlaceKind::kHospital) ++n;
        break;
      default:
        break;
    }
  }
  return n;
}

double SiteBeta(const TransmissionSite& site, int occupants, const EpidemicParams& params,
                double contagion_multiplier) {
  const double beta = params.delta * site.contagion_base * contagion_multiplier *
                      DensityModifier(occupants, site.capacity, params.density_scale);
  return std::clamp(beta, 0.0, 1.0);
}

std::vector<AgentId> PlaceTransmission(const TransmissionSite& site,
                                       std::span<const Occupant> occupants,
                                       const EpidemicParams& params,
                                       double contagion_multiplier, Rng& rng) {
  std::vector<AgentId> exposed;
  const int infectors = CountInfectors(site.kind, occupants);
  if (infectors == 0) return exposed;
  const double beta = SiteBeta(site, static_cast<int>(occupants.size()), params,
                               contagion_multiplier);
  if (beta <= 0.0) return exposed;
  for (const auto& o : occupants) {
    if (o.compartment != Compartment::kS) continue;
    const double b = std::min(1.0, beta * params.susceptibility[Index(o.age_group)]);
    if (rng.Bernoulli(ExposureProbability(b, infectors))) exposed.push_back(o.id);
  }
  return exposed;
}

void Expose(HealthState& health, const EpidemicParams& params, int ticks_per_day, Rng& rng) {
  const auto days = rng.UniformInt(params.incubation_days_min, params.incubation_days_max);
  health.compartment = Compartment::kE;
  health.ticks_in_compartment = 0;
  health.fresh = true;
  health.incubation_ticks = static_cast<int>(days) * ticks_per_day;
}

bool IsAllowedTransition(Compartment from, Compartment to) {
  using C = Compartment;
  if (from == to) return true;
  switch (from) {
    case C::kS: return to == C::kE;
    case C::kE: return to == C::kI1;
    case C::kI1: return to == C::kI2 || to == C::kO1 || to == C::kR || to == C::kDead;
    case C::kI2: return to == C::kO2 || to == C::kR || to == C::kDead;
    case C::kO1:
    case C::kO2: return to == C::kR || to == C::kDead;
    case C::kR: return to == C::kS;
    case C::kDead: return false;
  }
  return false;
}

Transition ProgressDisease(HealthState& h, AgeGroup age_group, const EpidemicParams& params,
                           int ticks_per_day, Rng& rng) {
  const Compartment from = h.compartment;
  if (h.fresh) {
    h.fresh = false;
  } else {
    ++h.ticks_in_compartment;
  }
  switch (from) {
    case Compartment::kS:
    case Compartment::kDead:
      break;
    case Compartment::kE:
      if (h.ticks_in_compartment >= h.incubation_ticks) {
        EnterCompartment(h, Compartment::kI1);
        h.believes_sick = rng.Bernoulli(1.0 - params.asymptomatic_fraction);
      }
      break;
    case Compartment::kI1:
    case Compartment::kI2:
    case Compartment::kO1:
    case Compartment::kO2: {
      const auto& rates = params.exit[ExitIndex(from)];
      const double die_day =
          std::min(1.0 - rates.recover, rates.die * params.death_multiplier[Index(age_group)]);
      const double die = PerTickProbability(die_day, ticks_per_day);
      const double recover = PerTickProbability(rates.recover, ticks_per_day);
      const double u = rng.Uniform();
      if (u < die) {
        EnterCompartment(h, Compartment::kDead);
        h.doctor_visit_pending = false;
      } else if (u < die + recover) {
        EnterCompartment(h, Compartment::kR);
        h.believes_sick = false;
        h.doctor_visit_pending = false;
      } else if (from == Compartment::kI1 && h.believes_sick && h.ticks_in_compartment >= 1) {
        // Symptomatic agents decide once: doctor now, or stay home sick.
        if (rng.Bernoulli(params.p_visit_doctor)) {
          EnterCompartment(h, Compartment::kO1);
          h.doctor_visit_pending = true;
        } else {
          EnterCompartment(h, Compartment::kI2);
        }
      } else if (from == Compartment::kI2 &&
                 rng.Bernoulli(PerTickProbability(params.p_late_visit, ticks_per_day))) {
        EnterCompartment(h, Compartment::kO2);
        h.doctor_visit_pending = true;
      }
      break;
    }
    case Compartment::kR:
      if (rng.Bernoulli(PerTickProbability(params.p_waning, ticks_per_day))) {
        EnterCompartment(h, Compartment::kS);
        h.tested_positive = false;
        h.detected = false;
      }
      break;
  }
  return {from, h.compartment};
}

void SeedInfection(World& world, int n) {
  std::vector<AgentId> susceptible;
  for (const auto& a : world.agents) {
    if (a.health.compartment == Compartment::kS) susceptible.push_back(a.id);
  }
  if (n < 0 || static_cast<std::size_t>(n) > susceptible.size()) {
    throw std::invalid_argument("cannot seed " + std::to_string(n) + " infections among " +
                                std::to_string(susceptible.size()) + " susceptible agents");
  }
  // Partial Fisher-Yates: the first n slots are a uniform sample.
  for (int i = 0; i < n; ++i) {
    const auto j = static_cast<std::size_t>(
        world.epidemic_rng.UniformInt(i, static_cast<std::int64_t>(susceptible.size()) - 1));
    std::swap(susceptible[static_cast<std::size_t>(i)], susceptible[j]);
    Agent& a = world.agents[static_cast<std::size_t>(susceptible[static_cast<std::size_t>(i)])];
    Expose(a.health, world.config.epidemic, world.clock.ticks_per_day(), world.epidemic_rng);
    ++world.ever_exposed;
  }
}

std::vector<AgentId> RunTests(World& world, const TestingParams& testing, Rng& rng) {
  std::vector<AgentId> detected;
  if (testing.capacity_per_day <= 0) return detected;
  std::vector<AgentId> eligible;
  for (const auto& a : world.agents) {
    if (!a.alive() || a.health.detected) continue;
    if (testing.mode == TestingMode::kSymptomatic && !a.health.believes_sick) continue;
    eligible.push_back(a.id);
  }
  const auto k = std::min<std::size_t>(eligible.size(),
                                       static_cast<std::size_t>(testing.capacity_per_day));
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = static_cast<std::size_t>(rng.UniformInt(
        static_cast<std::int64_t>(i), static_cast<std::int64_t>(eligible.size()) - 1));
    std::swap(eligible[i], eligible[j]);
    Agent& a = world.agents[static_cast<std::size_t>(eligible[i])];
    if (IsInfectious(a.health.compartment) && rng.Bernoulli(testing.sensitivity)) {
      a.health.tested_positive = true;
      a.health.detected = true;
      a.health.believes_sick = true;
      detected.push_back(a.id);
    }
  }
  std::sort(detected.begin(), detected.end());
  world.detected_total += static_cast<int>(detected.size());
  if (!detected.empty() && world.first_detection_tick < 0) {
    world.first_detection_tick = world.clock.tick();
  }
  return detected;
}

Census EpiCensus(const World& world) {
  Census c{};
  for (const auto& a : world.agents) ++c[Index(a.health.compartment)];
  return c;
}

}  // namespace needsim
