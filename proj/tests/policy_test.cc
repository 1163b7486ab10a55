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

#include "doctest.h"
#include "needsim/policy.h"
#include "needsim/world.h"

namespace needsim {
namespace {

PolicySet Armed(PolicyKind kind, const char* trigger, const char* release = nullptr) {
  PolicySpec s;
  s.kind = kind;
  s.trigger = ParseCondition(trigger);
  if (release != nullptr) s.release = ParseCondition(release);
  return PolicySet::FromSpecs(std::vector<PolicySpec>{s});
}

Place MakePlace(PlaceId id, PlaceKind kind) {
  Place p;
  p.id = id;
  p.kind = kind;
  return p;
}

TEST_SUITE("policy") {
  TEST_CASE("condition grammar") {
    const Condition c = ParseCondition("detected >= 1");
    CHECK(c.metric == Condition::Metric::kDetected);
    CHECK(c.op == Condition::Op::kAtLeast);
    CHECK(c.value == 1.0);
    CHECK(ParseCondition("  infected_fraction>=0.05").metric ==
          Condition::Metric::kInfectedFraction);
    CHECK(ParseCondition("tick <= 40").op == Condition::Op::kAtMost);
    CHECK(ParseCondition(FormatCondition(c)) == c);
    CHECK_THROWS_AS(ParseCondition("deaths >= 1"), std::invalid_argument);
    CHECK_THROWS_AS(ParseCondition("tick > 4"), std::invalid_argument);
    CHECK_THROWS_AS(ParseCondition("tick >= x"), std::invalid_argument);
  }

  TEST_CASE("below threshold: no activation") {
    PolicySet set = Armed(PolicyKind::kCloseSchools, "detected >= 1");
    TriggerInputs in;
    in.detected = 0;
    CHECK(EvaluateTriggers(set, in) == 0);
    CHECK_FALSE(set.IsActive(PolicyKind::kCloseSchools));
  }

  TEST_CASE("activation is sticky without a release") {
    PolicySet set = Armed(PolicyKind::kCloseSchools, "detected >= 1");
    TriggerInputs in;
    in.tick = 7;
    in.detected = 1;
    CHECK(EvaluateTriggers(set, in) == 1);
    CHECK(set.policies[0].activated_tick == 7);
    in.detected = 0;
    in.tick = 8;
    CHECK(EvaluateTriggers(set, in) == 0);
    CHECK(set.IsActive(PolicyKind::kCloseSchools));
    REQUIRE(set.log.size() == 1);
    CHECK(set.log[0].activated);
  }

  TEST_CASE("release clears and never re-arms") {
    PolicySet set = Armed(PolicyKind::kCloseSchools, "detected >= 1", "tick >= 20");
    TriggerInputs in;
    in.detected = 3;
    in.tick = 5;
    EvaluateTriggers(set, in);
    in.tick = 20;
    EvaluateTriggers(set, in);
    CHECK_FALSE(set.IsActive(PolicyKind::kCloseSchools));
    CHECK(set.policies[0].released_tick == 20);
    in.tick = 21;
    EvaluateTriggers(set, in);
    CHECK_FALSE(set.IsActive(PolicyKind::kCloseSchools));
  }

  TEST_CASE("closure rules by place kind") {
    const PolicySet schools = [] {
      PolicySet s = Armed(PolicyKind::kCloseSchools, "tick >= 0");
      EvaluateTriggers(s, TriggerInputs{});
      return s;
    }();
    const PolicySet lockdown = [] {
      PolicySet s = Armed(PolicyKind::kLockdown, "tick >= 0");
      EvaluateTriggers(s, TriggerInputs{});
      return s;
    }();
    CHECK(IsPlaceClosed(MakePlace(0, PlaceKind::kSchool), schools));
    CHECK_FALSE(IsPlaceClosed(MakePlace(0, PlaceKind::kLeisure), schools));
    for (PlaceKind k : {PlaceKind::kSchool, PlaceKind::kNonessentialShop, PlaceKind::kLeisure,
                        PlaceKind::kWorkplace}) {
      CHECK(IsPlaceClosed(MakePlace(0, k), lockdown));
    }
    for (PlaceKind k : {PlaceKind::kHome, PlaceKind::kEssentialShop, PlaceKind::kHospital}) {
      CHECK_FALSE(IsPlaceClosed(MakePlace(0, k), lockdown));
    }
  }

  TEST_CASE("filter: rest and stay are never removed; closed places are") {
    PolicySet set = Armed(PolicyKind::kLockdown, "tick >= 0");
    EvaluateTriggers(set, TriggerInputs{});
    const std::vector<Place> places{MakePlace(0, PlaceKind::kHome),
                                    MakePlace(1, PlaceKind::kLeisure),
                                    MakePlace(2, PlaceKind::kEssentialShop)};
    Agent a;
    const ActivityContext ctx{{ActivityKind::kRestAtHome, 0, false},
                              {ActivityKind::kStayHome, 0, false},
                              {ActivityKind::kShopEssential, 2, false},
                              {ActivityKind::kLeisure, 1, false}};
    const FilteredContext f = FilterContext(ctx, set, a, places, false);
    REQUIRE(f.allowed.size() == 3);
    REQUIRE(f.removed.size() == 1);
    CHECK(f.removed[0].kind == ActivityKind::kLeisure);
  }

  TEST_CASE("filter: telework order keeps capable staff home") {
    PolicySet set = Armed(PolicyKind::kCloseWorkplacesTelework, "tick >= 0");
    EvaluateTriggers(set, TriggerInputs{});
    const std::vector<Place> places{MakePlace(0, PlaceKind::kHome),
                                    MakePlace(1, PlaceKind::kWorkplace)};
    Agent a;
    a.work_or_school = 1;
    a.telework_capable = true;
    const ActivityContext ctx{{ActivityKind::kStayHome, 0, false},
                              {ActivityKind::kWorkAtOffice, 1, false},
                              {ActivityKind::kWorkAtHome, 0, false}};
    CHECK(FilterContext(ctx, set, a, places, true).removed.size() == 1);
    a.telework_capable = false;
    CHECK(FilterContext(ctx, set, a, places, true).removed.empty());
  }

  TEST_CASE("filter: essential workers still go in under lockdown") {
    PolicySet set = Armed(PolicyKind::kLockdown, "tick >= 0");
    EvaluateTriggers(set, TriggerInputs{});
    const std::vector<Place> places{MakePlace(0, PlaceKind::kHome),
                                    MakePlace(1, PlaceKind::kHospital)};
    Agent a;
    a.work_or_school = 1;
    CHECK(IsEssentialWorker(a, places));
    const ActivityContext ctx{{ActivityKind::kWorkAtOffice, 1, false}};
    CHECK(FilterContext(ctx, set, a, places, true).allowed.size() == 1);
  }

  TEST_CASE("caregiver picks the lowest-id telework-capable adult") {
    World w;
    w.active_policies = Armed(PolicyKind::kCloseSchools, "tick >= 0");
    EvaluateTriggers(w.active_policies, TriggerInputs{});
    w.places = {MakePlace(0, PlaceKind::kHome), MakePlace(1, PlaceKind::kHome)};
    // Household 0 is agents 0..3 with nobody telework-capable; household 1
    // is agents 4..7 where 5 and 6 can telework.
    const AgeGroup groups[8] = {AgeGroup::kWorker, AgeGroup::kWorker,  AgeGroup::kChild,
                                AgeGroup::kChild,  AgeGroup::kWorker,  AgeGroup::kWorker,
                                AgeGroup::kWorker, AgeGroup::kChild};
    for (AgentId i = 0; i < 8; ++i) {
      Agent a;
      a.id = i;
      a.age_group = groups[i];
      a.home = i < 4 ? 0 : 1;
      a.household = i < 4 ? 0 : 1;
      a.telework_capable = i == 5 || i == 6;
      w.agents.push_back(a);
    }
    w.households = {Household{0, HouseholdKind::kFamily, 0, kNoPlace, {0, 1, 2, 3}},
                    Household{1, HouseholdKind::kFamily, 1, kNoPlace, {4, 5, 6, 7}}};
    const auto assigned = AssignCaregivers(w);
    REQUIRE(assigned.size() == 2);
    CHECK(assigned[0].caregiver == 0);
    CHECK(assigned[1].caregiver == 5);
    CHECK(w.agents[5].is_caregiver);
    CHECK_FALSE(w.agents[6].is_caregiver);

    // Caregivers lose every away-from-home option during working segments.
    const ActivityContext ctx{{ActivityKind::kStayHome, 1, false},
                              {ActivityKind::kWorkAtOffice, 0, false},
                              {ActivityKind::kWorkAtHome, 1, false}};
    const FilteredContext f = FilterContext(ctx, w.active_policies, w.agents[5], w.places, true);
    CHECK(f.allowed.size() == 2);
    CHECK(f.removed.size() == 1);

    // Nobody left: assignment records -1.
    w.agents[0].health.compartment = Compartment::kDead;
    w.agents[1].health.compartment = Compartment::kDead;
    CHECK(AssignCaregivers(w)[0].caregiver == -1);
  }

  TEST_CASE("without school closure nobody is a caregiver") {
    World w;
    Agent a;
    a.is_caregiver = true;
    w.agents.push_back(a);
    CHECK(AssignCaregivers(w).empty());
    CHECK_FALSE(w.agents[0].is_caregiver);
  }

  TEST_CASE("social distancing multiplies contagion") {
    PolicySpec s;
    s.kind = PolicyKind::kSocialDistancing;
    s.trigger = ParseCondition("tick >= 0");
    s.contagion_multiplier = 0.25;
    PolicySet set = PolicySet::FromSpecs(std::vector<PolicySpec>{s, s});
    CHECK(set.ContagionMultiplier() == 1.0);
    EvaluateTriggers(set, TriggerInputs{});
    CHECK(set.ContagionMultiplier() == doctest::Approx(0.0625));
  }
}

}  // namespace
}  // namespace needsim
