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
#include <vector>

#include "doctest.h"
#include "needsim/config.h"
#include "needsim/epidemic.h"
#include "needsim/world.h"

namespace needsim {
namespace {

std::vector<Occupant> Crowd(int susceptible, int infectious, Compartment inf = Compartment::kI1) {
  std::vector<Occupant> v;
  AgentId id = 0;
  for (int i = 0; i < infectious; ++i) v.push_back({id++, inf, AgeGroup::kWorker});
  for (int i = 0; i < susceptible; ++i) v.push_back({id++, Compartment::kS, AgeGroup::kWorker});
  return v;
}

TEST_SUITE("epidemic") {
  TEST_CASE("exposure probability formula") {
    CHECK(ExposureProbability(0.1, 2) == doctest::Approx(0.19));
    CHECK(ExposureProbability(0.1, 0) == 0.0);
    CHECK(ExposureProbability(0.0, 5) == 0.0);
    CHECK(ExposureProbability(1.0, 1) == 1.0);
  }

  TEST_CASE("per tick probability compounds back to per day") {
    const double p = PerTickProbability(0.2, 4);
    CHECK(1.0 - std::pow(1.0 - p, 4) == doctest::Approx(0.2));
    CHECK(PerTickProbability(0.0, 4) == 0.0);
    CHECK(PerTickProbability(1.0, 4) == 1.0);
  }

  TEST_CASE("density modifier") {
    CHECK(DensityModifier(10, 20, 1.0) == doctest::Approx(0.5));
    CHECK(DensityModifier(40, 20, 1.0) == 1.0);
    CHECK(DensityModifier(10, 20, 2.0) == 1.0);
  }

  TEST_CASE("no infectors, no exposure") {
    EpidemicParams p;
    Rng rng(1, Stream::kEpidemic);
    const TransmissionSite site{0, PlaceKind::kLeisure, 0.5, 10};
    const auto crowd = Crowd(9, 0);
    CHECK(PlaceTransmission(site, crowd, p, 1.0, rng).empty());
  }

  TEST_CASE("delta zero blocks transmission") {
    EpidemicParams p;
    p.delta = 0.0;
    Rng rng(1, Stream::kEpidemic);
    const TransmissionSite site{0, PlaceKind::kLeisure, 1.0, 10};
    const auto crowd = Crowd(8, 2);
    CHECK(PlaceTransmission(site, crowd, p, 1.0, rng).empty());
  }

  TEST_CASE("isolated compartments transmit only in hospitals") {
    const auto crowd = Crowd(3, 2, Compartment::kO1);
    CHECK(CountInfectors(PlaceKind::kLeisure, crowd) == 0);
    CHECK(CountInfectors(PlaceKind::kHospital, crowd) == 2);
    const auto exposed = Crowd(3, 2, Compartment::kE);
    CHECK(CountInfectors(PlaceKind::kHospital, exposed) == 0);
  }

  TEST_CASE("monte carlo exposure rate for beta 0.1, two infectors") {
    EpidemicParams p;
    p.delta = 1.0;
    Rng rng(7, Stream::kEpidemic);
    const int trials = 20000;
    // capacity == occupants so the density modifier is 1.
    const auto crowd = Crowd(1, 2);
    const TransmissionSite site{0, PlaceKind::kLeisure, 0.1, 3};
    int hits = 0;
    for (int i = 0; i < trials; ++i) {
      hits += static_cast<int>(PlaceTransmission(site, crowd, p, 1.0, rng).size());
    }
    const double sigma = std::sqrt(0.19 * 0.81 / trials);
    CHECK(std::abs(static_cast<double>(hits) / trials - 0.19) <= 3.0 * sigma);
  }

  TEST_CASE("14 day incubation from tick 0 becomes I1 at tick 56") {
    EpidemicParams p;
    p.incubation_days_min = p.incubation_days_max = 14;
    Rng rng(3, Stream::kEpidemic);
    HealthState h;
    Expose(h, p, 4, rng);
    int became = -1;
    for (int t = 0; t < 100 && became < 0; ++t) {
      ProgressDisease(h, AgeGroup::kWorker, p, 4, rng);
      if (h.compartment == Compartment::kI1) became = t;
    }
    CHECK(became == 56);
  }

  TEST_CASE("every transition follows the compartment graph; dead stays dead") {
    EpidemicParams p;
    p.p_waning = 0.3;
    p.exit[1].die = 0.3;
    Rng rng(11, Stream::kEpidemic);
    for (int agent = 0; agent < 500; ++agent) {
      HealthState h;
      Expose(h, p, 4, rng);
      for (int t = 0; t < 200; ++t) {
        const Transition tr = ProgressDisease(h, AgeGroup::kRetiree, p, 4, rng);
        CHECK(IsAllowedTransition(tr.from, tr.to));
        if (tr.from == Compartment::kDead) CHECK(tr.to == Compartment::kDead);
      }
    }
  }

  TEST_CASE("without waning, recovered is absorbing") {
    EpidemicParams p;
    Rng rng(5, Stream::kEpidemic);
    HealthState h;
    h.compartment = Compartment::kR;
    for (int t = 0; t < 1000; ++t) ProgressDisease(h, AgeGroup::kWorker, p, 4, rng);
    CHECK(h.compartment == Compartment::kR);
  }

  TEST_CASE("waning returns recovered to susceptible and clears detection") {
    EpidemicParams p;
    p.p_waning = 1.0;
    Rng rng(5, Stream::kEpidemic);
    HealthState h;
    h.compartment = Compartment::kR;
    h.detected = true;
    ProgressDisease(h, AgeGroup::kWorker, p, 4, rng);
    CHECK(h.compartment == Compartment::kS);
    CHECK_FALSE(h.detected);
  }

  TEST_CASE("seeding") {
    ScenarioConfig c;
    c.population.target = 120;
    World w = GeneratePopulation(c, 9);
    CHECK(EpiCensus(w)[Index(Compartment::kS)] == static_cast<int>(w.agents.size()));
    SeedInfection(w, 4);
    CHECK(EpiCensus(w)[Index(Compartment::kE)] == 4);
    CHECK(w.ever_exposed == 4);
    CHECK_THROWS_AS(SeedInfection(w, 1000), std::invalid_argument);
  }

  TEST_CASE("symptomatic testing detects infectious believers") {
    ScenarioConfig c;
    c.population.target = 120;
    World w = GeneratePopulation(c, 2);
    w.agents[3].health.compartment = Compartment::kI1;
    w.agents[3].health.believes_sick = true;
    w.agents[4].health.compartment = Compartment::kI1;  // asymptomatic
    const auto found = RunTests(w, TestingParams{TestingMode::kSymptomatic, 10, 1.0}, w.testing_rng);
    REQUIRE(found.size() == 1);
    CHECK(found[0] == 3);
    CHECK(w.detected_total == 1);
    CHECK(w.first_detection_tick == 0);
  }

  TEST_CASE("parameter validation") {
    EpidemicParams p;
    CHECK_NOTHROW(ValidateEpidemicParams(p));
    p.incubation_days_min = 5;
    p.incubation_days_max = 2;
    CHECK_THROWS_AS(ValidateEpidemicParams(p), std::invalid_argument);
  }
}

}  // namespace
}  // namespace needsim
