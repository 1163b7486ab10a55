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

#include <algorithm>
#include <cmath>
#include <string>

#include "needsim/world.h"

namespace needsim {
namespace {

int Draw(const std::vector<int>& choices, Rng& rng) {
  if (choices.empty()) return 0;
  return choices[static_cast<std::size_t>(
      rng.UniformInt(0, static_cast<std::int64_t>(choices.size()) - 1))];
}

class Builder {
 public:
  Builder(const ScenarioConfig& config, std::uint64_t seed) : cfg_(config) {
    w_.config = config;
    w_.clock = Clock(config.ticks_per_day);
    w_.seed = seed;
    w_.population_rng = Rng(seed, Stream::kPopulation);
    w_.epidemic_rng = Rng(seed, Stream::kEpidemic);
    w_.behavior_rng = Rng(seed, Stream::kBehavior);
    w_.testing_rng = Rng(seed, Stream::kTesting);
  }

  World Build() {
    AddPublicPlaces();
    AddHouseholds();
    AssignEmployers();
    AssignSchools();
    BuildClusters();
    InitializeAgents();
    FinishEconomy();
    w_.active_policies = PolicySet::FromSpecs(cfg_.policies);
    w_.initial_population = static_cast<int>(w_.agents.size());
    w_.initial_money = TotalMoney(w_);
    return std::move(w_);
  }

 private:
  Rng& rng() { return w_.population_rng; }

  PlaceId AddPlace(PlaceKind kind, int capacity, bool university = false) {
    Place p;
    p.id = static_cast<PlaceId>(w_.places.size());
    p.kind = kind;
    p.contagion_base = cfg_.population.places[Index(kind)].contagion_base;
    p.capacity = std::max(1, capacity);
    p.is_university = university;
    p.wealth = cfg_.economy.place_initial_wealth[Index(kind)];
    w_.places.push_back(std::move(p));
    return w_.places.back().id;
  }

  void AddPublicPlaces() {
    for (PlaceKind k : kAllPlaceKinds) {
      if (k == PlaceKind::kHome) continue;
      const auto& pk = cfg_.population.places[Index(k)];
      for (int i = 0; i < pk.count; ++i) AddPlace(k, pk.capacity);
      if (k == PlaceKind::kSchool) {
        for (int i = 0; i < cfg_.population.universities; ++i) AddPlace(k, pk.capacity, true);
      }
    }
  }

  AgentId AddAgent(AgeGroup g, PlaceId home, int household) {
    Agent a;
    a.id = static_cast<AgentId>(w_.agents.size());
    a.age_group = g;
    a.home = home;
    a.household = household;
    a.current_place = home;
    a.last_activity = {ActivityKind::kStayHome, home, false};
    w_.agents.push_back(std::move(a));
    w_.households[static_cast<std::size_t>(household)].members.push_back(w_.agents.back().id);
    return w_.agents.back().id;
  }

  int AddHousehold(HouseholdKind kind) {
    const HouseholdShape& shape = cfg_.population.shapes[Index(kind)];
    Household h;
    h.id = static_cast<int>(w_.households.size());
    h.kind = kind;
    w_.households.push_back(h);
    const int hid = h.id;
    const int children = Draw(shape.children, rng());
    const int students = Draw(shape.students, rng());
    const int retirees = Draw(shape.retirees, rng());

    if (kind == HouseholdKind::kCoParenting) {
      // One parent per home; the children alternate between them weekly.
      const int per_home = std::max(1, shape.adults / 2);
      const int first_size = per_home + children;
      const PlaceId first = AddPlace(PlaceKind::kHome, first_size);
      const PlaceId second =
          AddPlace(PlaceKind::kHome, std::max(1, shape.adults - per_home) + children);
      w_.households[static_cast<std::size_t>(hid)].home = first;
      w_.households[static_cast<std::size_t>(hid)].second_home = second;
      for (int i = 0; i < per_home; ++i) AddAgent(AgeGroup::kWorker, first, hid);
      for (int i = per_home; i < std::max(shape.adults, per_home + 1); ++i) {
        AddAgent(AgeGroup::kWorker, second, hid);
      }
      for (int i = 0; i < children; ++i) {
        const AgentId c = AddAgent(AgeGroup::kChild, first, hid);
        w_.agents[static_cast<std::size_t>(c)].alt_home = second;
      }
      return static_cast<int>(w_.households[static_cast<std::size_t>(hid)].members.size());
    }

    const int size = shape.adults + children + students + retirees;
    const PlaceId home = AddPlace(PlaceKind::kHome, size);
    w_.households[static_cast<std::size_t>(hid)].home = home;
    for (int i = 0; i < shape.adults; ++i) AddAgent(AgeGroup::kWorker, home, hid);
    for (int i = 0; i < children; ++i) AddAgent(AgeGroup::kChild, home, hid);
    for (int i = 0; i < students; ++i) AddAgent(AgeGroup::kStudent, home, hid);
    for (int i = 0; i < retirees; ++i) AddAgent(AgeGroup::kRetiree, home, hid);
    return size;
  }

  void AddHouseholds() {
    const auto& pop = cfg_.population;
    for (std::size_t k = 0; k < kNumHouseholdKinds; ++k) {
      const double fraction = pop.distribution[k];
      if (fraction <= 0.0) continue;
      const auto kind = static_cast<HouseholdKind>(k);
      const double budget = fraction * pop.target;
      const double half_mean = pop.shapes[k].MeanSize() / 2.0;
      double allocated = 0.0;
      do {
        allocated += AddHousehold(kind);
      } while (budget - allocated >= half_mean);
    }
  }

  void AssignEmployers() {
    const auto& pop = cfg_.population;
    std::array<std::vector<PlaceId>, kNumPlaceKinds> by_kind;
    for (const Place& p : w_.places) {
      if (p.kind != PlaceKind::kHome && !p.is_university) by_kind[Index(p.kind)].push_back(p.id);
    }
    std::array<double, kNumPlaceKinds> weights{};
    for (std::size_t k = 0; k < kNumPlaceKinds; ++k) {
      weights[k] = by_kind[k].empty() ? 0.0 : pop.employer_weights[k];
    }
    double total = 0.0;
    for (double x : weights) total += x;
    for (Agent& a : w_.agents) {
      if (a.age_group == AgeGroup::kWorker) {
        a.commuter = rng().Bernoulli(pop.commuter_fraction);
        if (total <= 0.0 || rng().Bernoulli(pop.unemployment_fraction)) continue;
        const auto kind = rng().Discrete(weights);
        const auto& options = by_kind[kind];
        const PlaceId employer = options[static_cast<std::size_t>(
            rng().UniformInt(0, static_cast<std::int64_t>(options.size()) - 1))];
        a.work_or_school = employer;
        w_.places[static_cast<std::size_t>(employer)].employees.push_back(a.id);
        const auto k = static_cast<PlaceKind>(kind);
        if (k == PlaceKind::kWorkplace) {
          a.telework_capable = rng().Bernoulli(pop.telework_fraction);
        } else if (k == PlaceKind::kSchool) {
          // Teaching moves online when schools close.
          a.telework_capable = true;
        }
      }
    }
  }

  void AssignSchools() {
    std::vector<PlaceId> schools;
    std::vector<PlaceId> universities;
    for (const Place& p : w_.places) {
      if (p.kind != PlaceKind::kSchool) continue;
      (p.is_university ? universities : schools).push_back(p.id);
    }
    auto pick = [&](const std::vector<PlaceId>& v) {
      return v[static_cast<std::size_t>(rng().UniformInt(0, static_cast<std::int64_t>(v.size()) - 1))];
    };
    for (Agent& a : w_.agents) {
      if (a.age_group == AgeGroup::kChild) {
        if (!schools.empty()) a.work_or_school = pick(schools);
        else if (!universities.empty()) a.work_or_school = pick(universities);
      } else if (a.age_group == AgeGroup::kStudent) {
        a.commuter = rng().Bernoulli(cfg_.population.commuter_fraction);
        if (!universities.empty()) a.work_or_school = pick(universities);
        else if (!schools.empty()) a.work_or_school = pick(schools);
      }
    }
  }

  void BuildClusters() {
    std::vector<AgentId> order(w_.agents.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<AgentId>(i);
    rng().Shuffle(order);
    std::vector<PlaceId> leisure = w_.PlacesOfKind(PlaceKind::kLeisure);
    const double mean = cfg_.population.cluster_mean_size;
    const auto lo = std::max<std::int64_t>(1, std::llround(mean * 0.5));
    const auto hi = std::max<std::int64_t>(lo, std::llround(mean * 1.5));
    std::size_t pos = 0;
    while (pos < order.size()) {
      const auto size = static_cast<std::size_t>(rng().UniformInt(lo, hi));
      const int cid = static_cast<int>(w_.social_clusters.size());
      std::vector<AgentId> members;
      for (std::size_t i = 0; i < size && pos < order.size(); ++i, ++pos) {
        members.push_back(order[pos]);
        w_.agents[static_cast<std::size_t>(order[pos])].cluster = cid;
      }
      std::sort(members.begin(), members.end());
      w_.social_clusters.push_back(std::move(members));
      w_.cluster_leisure.push_back(
          leisure.empty() ? kNoPlace
                          : leisure[static_cast<std::size_t>(rng().UniformInt(
                                0, static_cast<std::int64_t>(leisure.size()) - 1))]);
    }
  }

  void InitializeAgents() {
    const NeedsCalibration& cal = cfg_.needs;
    const TraitRanges& tr = cfg_.population.traits;
    const EconomyParams& econ = cfg_.economy;
    for (Agent& a : w_.agents) {
      NeedVector importance{};
      for (std::size_t n = 0; n < kNumNeeds; ++n) {
        importance[n] = cal.need[n].importance *
                        rng().Uniform(1.0 - tr.importance_jitter, 1.0 + tr.importance_jitter);
      }
      const double risk = rng().Uniform(tr.risk_avoidance_min, tr.risk_avoidance_max);
      const double compliance = rng().Uniform(tr.compliance_min, tr.compliance_max);
      a.traits = MakeTraits(risk, compliance, importance);

      NeedsState& s = a.needs;
      for (std::size_t n = 0; n < kNumNeeds; ++n) {
        s.threshold[n] = cal.need[n].threshold;
        s.decay_per_tick[n] = cal.need[n].decay_per_tick;
        s.level[n] = rng().Uniform(cal.need[n].threshold, 1.0);
      }
      for (std::size_t k = 0; k < kNumSubneeds; ++k) {
        s.sub_decay_per_tick[k] = cal.subneed[k].decay_per_tick;
        s.sub_level[k] = rng().Uniform(0.6, 1.0);
      }
      a.wealth = econ.initial_wealth[Index(a.age_group)];
      a.essential_stock = a.age_group == AgeGroup::kChild
                              ? cal.food_safety_days
                              : rng().Uniform(econ.initial_stock_days_min,
                                              econ.initial_stock_days_max);
      RefreshDerivedNeeds(w_, a);
    }
  }

  void FinishEconomy() {
    const EconomyParams& econ = cfg_.economy;
    w_.government.reserves = econ.government_initial_reserves;
    w_.government.tax_rate = econ.tax_rate;
    w_.government.subsidy_per_unemployed = econ.subsidy_per_day;
    w_.government.public_service_cost = econ.public_service_cost;
  }

  const ScenarioConfig& cfg_;
  World w_;
};

}  // namespace

World GeneratePopulation(const ScenarioConfig& config, std::uint64_t seed) {
  ValidateConfig(config);
  const auto& pop = config.population;
  for (std::size_t k = 0; k < kNumHouseholdKinds; ++k) {
    const double fraction = pop.distribution[k];
    if (fraction <= 0.0) continue;
    const double budget = fraction * pop.target;
    if (budget < pop.shapes[k].MinSize()) {
      throw ConstraintError("population target " + std::to_string(pop.target) +
                            " is too small to hold a " +
                            std::string(ToString(static_cast<HouseholdKind>(k))) +
                            " household");
    }
  }
  return Builder(config, seed).Build();
}

}  // namespace needsim
