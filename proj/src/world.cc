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

#include "needsim/world.h"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace needsim {
namespace {

// Deterministic pick among places of a kind, stable for an agent within a
// day, without drawing from any RNG stream.
PlaceId PickDaily(const std::vector<PlaceId>& options, const World& world, const Agent& agent,
                  std::uint64_t salt) {
  if (options.empty()) return kNoPlace;
  const std::uint64_t h =
      MixSeed(world.seed ^ MixSeed(static_cast<std::uint64_t>(agent.id) * 0x100000001b3ULL +
                                   static_cast<std::uint64_t>(world.clock.day_index()) * 131 +
                                   salt));
  return options[h % options.size()];
}

Money EssentialBill(const World& world, const Agent& agent) {
  const auto& econ = world.config.economy;
  const double days = world.config.needs.food_safety_days - agent.essential_stock;
  if (days <= 0.0) return 0;
  return static_cast<Money>(std::ceil(days * static_cast<double>(econ.essential_price_per_day)));
}

TriggerInputs CurrentTriggerInputs(const World& world) {
  TriggerInputs in;
  in.tick = world.clock.tick();
  in.detected = world.detected_total;
  int infected = 0;
  for (const Agent& a : world.agents) {
    if (IsInfected(a.health.compartment)) ++infected;
  }
  in.infected_fraction = world.initial_population > 0
                             ? static_cast<double>(infected) / world.initial_population
                             : 0.0;
  return in;
}

void SyncPolicyEffects(World& world) {
  world.government.wage_takeover_active =
      world.active_policies.IsActive(PolicyKind::kWageTakeover);
}

void RecordDetection(World& world, Agent& a) {
  if (a.health.detected) return;
  a.health.detected = true;
  ++world.detected_total;
  if (world.first_detection_tick < 0) world.first_detection_tick = world.clock.tick();
}

}  // namespace

std::vector<PlaceId> World::PlacesOfKind(PlaceKind kind) const {
  std::vector<PlaceId> out;
  for (const Place& p : places) {
    if (p.kind == kind) out.push_back(p.id);
  }
  return out;
}

PlaceId World::ResidenceOf(const Agent& agent) const {
  if (agent.alt_home != kNoPlace && clock.week_index() % 2 == 1) return agent.alt_home;
  return agent.home;
}

SegmentType World::CurrentSegmentType() const {
  return config.schedule.At(clock.segment_index(), clock.is_weekend());
}

void RefreshDerivedNeeds(const World& world, Agent& agent) {
  NeedsState& s = agent.needs;
  if (agent.age_group == AgeGroup::kChild) {
    // Children are provided for by their household.
    s[Subneed::kFoodSafety] = 1.0;
    s[Subneed::kFinancialSurvival] = 1.0;
    s[Subneed::kFinancialSafety] = 1.0;
  } else {
    const auto& econ = world.config.economy;
    s[Subneed::kFoodSafety] =
        FoodSafetyLevel(agent.essential_stock, world.config.needs.food_safety_days);
    s[Subneed::kFinancialSurvival] =
        Clamp01(static_cast<double>(agent.wealth) / static_cast<double>(econ.financial_survival_buffer));
    s[Subneed::kFinancialSafety] =
        Clamp01(static_cast<double>(agent.wealth) / static_cast<double>(econ.financial_safety_buffer));
  }
  RefreshComposite(s, world.config.needs.safety_weights);
}

ActivityContext AvailableContext(const World& world, const Agent& agent) {
  ActivityContext ctx;
  const PlaceId home = world.ResidenceOf(agent);
  const HealthState& h = agent.health;
  if (h.doctor_visit_pending) {
    const PlaceId hospital = PickDaily(world.PlacesOfKind(PlaceKind::kHospital), world, agent, 7);
    if (hospital != kNoPlace) return {{ActivityKind::kVisitDoctor, hospital, false}};
  }
  if (h.compartment == Compartment::kO1 || h.compartment == Compartment::kO2) {
    return {{ActivityKind::kRestAtHome, home, false}};
  }
  const SegmentType seg = world.CurrentSegmentType();
  if (seg == SegmentType::kRest) return {{ActivityKind::kRestAtHome, home, false}};

  if (h.believes_sick) ctx.push_back({ActivityKind::kRestAtHome, home, false});
  ctx.push_back({ActivityKind::kStayHome, home, false});

  if (seg == SegmentType::kWork) {
    if (agent.employed()) {
      ctx.push_back({ActivityKind::kWorkAtOffice, agent.work_or_school, false});
      if (agent.telework_capable) ctx.push_back({ActivityKind::kWorkAtHome, home, false});
      std::sort(ctx.begin(), ctx.end(), TieBreakBefore);
      return ctx;
    }
    if ((agent.age_group == AgeGroup::kChild || agent.age_group == AgeGroup::kStudent) &&
        agent.work_or_school != kNoPlace) {
      ctx.push_back({ActivityKind::kAttendSchool, agent.work_or_school, false});
      return ctx;
    }
  }

  if (agent.age_group != AgeGroup::kChild) {
    const PlaceId essential =
        PickDaily(world.PlacesOfKind(PlaceKind::kEssentialShop), world, agent, 1);
    if (essential != kNoPlace) ctx.push_back({ActivityKind::kShopEssential, essential, false});
    const PlaceId nonessential =
        PickDaily(world.PlacesOfKind(PlaceKind::kNonessentialShop), world, agent, 2);
    if (nonessential != kNoPlace) {
      ctx.push_back({ActivityKind::kShopNonessential, nonessential, false});
    }
  }
  const PlaceId leisure = agent.cluster >= 0
                              ? world.cluster_leisure[static_cast<std::size_t>(agent.cluster)]
                              : kNoPlace;
  if (leisure != kNoPlace) ctx.push_back({ActivityKind::kLeisure, leisure, false});
  return ctx;
}

TickMetrics StepWorld(World& w) {
  if (w.started) {
    w.clock.Advance();
  } else {
    w.started = true;
  }
  const Tick now = w.clock.tick();
  const int tpd = w.clock.ticks_per_day();
  const ScenarioConfig& cfg = w.config;
  const NeedsCalibration& cal = cfg.needs;
  const SegmentType seg = w.CurrentSegmentType();
  const bool working_segment = seg == SegmentType::kWork;
  const std::size_t policy_log_before = w.active_policies.log.size();
  const std::size_t violations_before = w.caregiver_violations.size();
  const int exposed_before = w.ever_exposed;

  // Policies react to what was known at the start of the tick.
  EvaluateTriggers(w.active_policies, CurrentTriggerInputs(w));
  SyncPolicyEffects(w);
  w.caregivers = AssignCaregivers(w);

  int alive = 0;
  int sick = 0;
  for (const Agent& a : w.agents) {
    if (!a.alive()) continue;
    ++alive;
    if (a.health.believes_sick) ++sick;
  }
  const double prevalence = alive > 0 ? static_cast<double>(sick) / alive : 0.0;

  std::vector<std::array<double, kNumActivityKinds>> cluster_share(w.social_clusters.size());
  for (std::size_t c = 0; c < w.social_clusters.size(); ++c) {
    int members = 0;
    for (AgentId id : w.social_clusters[c]) {
      const Agent& m = w.agents[static_cast<std::size_t>(id)];
      if (!m.alive()) continue;
      ++members;
      cluster_share[c][Index(m.last_activity.kind)] += 1.0;
    }
    if (members > 0) {
      for (double& x : cluster_share[c]) x /= members;
    }
  }

  TickMetrics metrics;
  for (Place& p : w.places) p.occupants.clear();
  std::vector<AgentId> station_transit;
  const std::vector<PlaceId> stations = w.PlacesOfKind(PlaceKind::kStation);

  for (Agent& a : w.agents) {
    if (!a.alive()) continue;
    Decay(a.needs, 1, cal.safety_weights);
    if (a.health.believes_sick) {
      a.needs[Need::kSurvival] = Clamp01(a.needs[Need::kSurvival] - cal.sick_survival_drain);
    }
    RefreshDerivedNeeds(w, a);

    const ActivityContext ctx = AvailableContext(w, a);
    const FilteredContext filtered =
        FilterContext(ctx, w.active_policies, a, w.places, working_segment);

    AgentSituation sit;
    sit.needs = a.needs;
    sit.traits = a.traits;
    sit.believes_sick = a.health.believes_sick;
    sit.essential_stock = a.essential_stock;
    const double wanted = std::max(0.0, cal.food_safety_days - a.essential_stock);
    sit.essential_days_affordable =
        std::min(wanted, static_cast<double>(std::max<Money>(a.wealth, 0)) /
                             static_cast<double>(cfg.economy.essential_price_per_day));
    sit.prevalence = prevalence;
    if (a.cluster >= 0) sit.cluster_share = cluster_share[static_cast<std::size_t>(a.cluster)];

    const Choice choice = ChooseActivity(sit, filtered, cal);
    const Activity& act = choice.activity;
    a.current_place = act.place != kNoPlace ? act.place : w.ResidenceOf(a);
    const Place& where = w.places[static_cast<std::size_t>(a.current_place)];
    const bool open = !IsPlaceClosed(where, w.active_policies);

    switch (act.kind) {
      case ActivityKind::kVisitDoctor:
        a.health.doctor_visit_pending = false;
        a.health.believes_sick = true;
        RecordDetection(w, a);
        break;
      case ActivityKind::kShopEssential:
        if (open) Transact(w, a.id, where.id, EssentialBill(w, a));
        break;
      case ActivityKind::kShopNonessential:
        if (open) Transact(w, a.id, where.id, cfg.economy.nonessential_price);
        break;
      case ActivityKind::kLeisure:
        if (open) Transact(w, a.id, where.id, cfg.economy.leisure_price);
        break;
      case ActivityKind::kWorkAtOffice:
        if (open && a.employed() && act.place == a.work_or_school) a.worked_today = true;
        break;
      case ActivityKind::kWorkAtHome:
        if (a.employed()) a.worked_today = true;
        break;
      default:
        break;
    }

    const double compliance_before = a.needs[Subneed::kCompliance];
    ApplyEffects(a.needs, choice.gains, cal.safety_weights);
    RefreshDerivedNeeds(w, a);
    if (a.is_caregiver && working_segment && !IsHomeActivity(act.kind)) {
      w.caregiver_violations.push_back({now, a.household, a.id,
                                        CaregiverViolation::Reason::kBrokePolicy,
                                        compliance_before, a.needs[Subneed::kCompliance]});
    }
    a.last_activity = act;
    ++metrics.activities[Index(act.kind)];
    w.places[static_cast<std::size_t>(a.current_place)].occupants.push_back(a.id);
    if (a.commuter && !stations.empty() &&
        (act.kind == ActivityKind::kWorkAtOffice || act.kind == ActivityKind::kAttendSchool)) {
      station_transit.push_back(a.id);
    }
  }
  if (working_segment) {
    for (const CaregiverAssignment& c : w.caregivers) {
      if (c.caregiver < 0) {
        w.caregiver_violations.push_back(
            {now, c.household, -1, CaregiverViolation::Reason::kNoAvailableAdult, 0.0, 0.0});
      }
    }
  }

  // Transmission. Exposure draws use the state at the start of this phase.
  const double multiplier = w.active_policies.ContagionMultiplier();
  std::vector<AgentId> exposed;
  std::vector<Occupant> occupants;
  auto transmit = [&](const Place& p, const std::vector<AgentId>& ids) {
    if (ids.size() < 2) return;
    occupants.clear();
    for (AgentId id : ids) {
      const Agent& o = w.agents[static_cast<std::size_t>(id)];
      occupants.push_back({id, o.health.compartment, o.age_group});
    }
    const TransmissionSite site{p.id, p.kind, p.contagion_base, p.capacity};
    std::vector<AgentId> hit =
        PlaceTransmission(site, occupants, cfg.epidemic, multiplier, w.epidemic_rng);
    if (hit.empty()) return;
    if (cfg.log_transmissions) {
      w.transmission_log.push_back(
          {p.id, now, CountInfectors(p.kind, occupants), hit});
    }
    exposed.insert(exposed.end(), hit.begin(), hit.end());
  };
  for (const Place& p : w.places) {
    if (p.kind == PlaceKind::kStation) continue;
    transmit(p, p.occupants);
  }
  if (!stations.empty()) {
    transmit(w.places[static_cast<std::size_t>(stations.front())], station_transit);
  }
  for (AgentId id : exposed) {
    Agent& a = w.agents[static_cast<std::size_t>(id)];
    if (a.health.compartment != Compartment::kS) continue;
    Expose(a.health, cfg.epidemic, tpd, w.epidemic_rng);
    ++w.ever_exposed;
  }

  for (Agent& a : w.agents) {
    if (!a.alive()) continue;
    ProgressDisease(a.health, a.age_group, cfg.epidemic, tpd, w.epidemic_rng);
  }
  if (w.clock.is_day_start()) {
    if (const Policy* testing = w.active_policies.FindActive(PolicyKind::kTesting)) {
      RunTests(w, testing->spec.testing, w.testing_rng);
    }
  }
  // Detections made during this tick can fire triggers on the same tick.
  EvaluateTriggers(w.active_policies, CurrentTriggerInputs(w));
  SyncPolicyEffects(w);

  if (w.clock.segment_index() == tpd - 1) {
    SettleDay(w);
    const double use = cfg.economy.essential_consumption_per_day;
    for (Agent& a : w.agents) {
      a.worked_today = false;
      if (!a.alive()) continue;
      if (a.age_group != AgeGroup::kChild) {
        a.essential_stock = std::max(0.0, a.essential_stock - use);
      }
      RefreshDerivedNeeds(w, a);
    }
    const auto day = static_cast<std::size_t>(w.clock.day_index());
    const Money bought = day < w.purchases_by_day.size() ? w.purchases_by_day[day] : 0;
    const Money total = TotalMoney(w);
    w.last_velocity = total > 0 ? static_cast<double>(bought) / static_cast<double>(total) : 0.0;
  }

  metrics.tick = now;
  metrics.day = w.clock.day_index();
  metrics.segment = w.clock.segment_index();
  metrics.compartments = EpiCensus(w);
  for (Compartment c : kAllCompartments) {
    if (IsInfected(c)) metrics.infected += metrics.compartments[Index(c)];
  }
  std::array<Money, kNumAgeGroups> wealth_sum{};
  std::array<int, kNumAgeGroups> wealth_n{};
  for (const Agent& a : w.agents) {
    if (!a.alive()) continue;
    ++metrics.occupancy[Index(w.places[static_cast<std::size_t>(a.current_place)].kind)];
    wealth_sum[Index(a.age_group)] += a.wealth;
    ++wealth_n[Index(a.age_group)];
  }
  for (std::size_t g = 0; g < kNumAgeGroups; ++g) {
    metrics.mean_wealth[g] =
        wealth_n[g] > 0 ? static_cast<double>(wealth_sum[g]) / wealth_n[g] : 0.0;
  }
  Money household_total = 0;
  for (const Household& h : w.households) {
    for (AgentId id : h.members) household_total += w.agents[static_cast<std::size_t>(id)].wealth;
  }
  metrics.mean_household_wealth =
      w.households.empty() ? 0.0
                           : static_cast<double>(household_total) /
                                 static_cast<double>(w.households.size());
  for (const Place& p : w.places) {
    switch (p.kind) {
      case PlaceKind::kEssentialShop: metrics.essential_shop_wealth += p.wealth; break;
      case PlaceKind::kNonessentialShop:
        metrics.nonessential_shop_wealth += p.wealth;
        if (p.wealth < 0) ++metrics.insolvent_nonessential_shops;
        break;
      case PlaceKind::kLeisure: metrics.leisure_wealth += p.wealth; break;
      default: break;
    }
  }
  metrics.government_reserves = w.government.reserves;
  metrics.total_money = TotalMoney(w);
  metrics.velocity = w.last_velocity;
  metrics.detected_total = w.detected_total;
  metrics.new_exposures = w.ever_exposed - exposed_before;
  metrics.ever_exposed = w.ever_exposed;
  for (const Policy& p : w.active_policies.policies) {
    if (p.active) ++metrics.policies_active;
  }
  for (std::size_t i = policy_log_before; i < w.active_policies.log.size(); ++i) {
    if (w.active_policies.log[i].activated) ++metrics.policy_activations;
  }
  metrics.caregiver_violations =
      static_cast<int>(w.caregiver_violations.size() - violations_before);
  return metrics;
}

}  // namespace needsim
