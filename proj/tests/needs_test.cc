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
#include "needsim/needs.h"
#include "test_util.h"

namespace needsim {
namespace {

using testing::UniformNeeds;

const SafetyWeights kNoFinSafety{0.75, 0.25, 0.0, false};

TEST_SUITE("needs") {
  TEST_CASE("decay: zero ticks is identity") {
    NeedsState s = UniformNeeds(0.5, 0.5, 0.05);
    RefreshComposite(s, SafetyWeights{});
    const NeedsState before = s;
    Decay(s, 0, SafetyWeights{});
    CHECK(s == before);
  }

  TEST_CASE("decay: belonging 0.5 at 0.05 for 4 ticks is 0.30") {
    NeedsState s = UniformNeeds(0.5, 0.5, 0.0);
    s.decay_per_tick[Index(Need::kBelonging)] = 0.05;
    Decay(s, 4, SafetyWeights{});
    CHECK(s[Need::kBelonging] == doctest::Approx(0.30).epsilon(1e-12));
  }

  TEST_CASE("decay: clamps at zero") {
    NeedsState s = UniformNeeds(0.01, 0.5, 0.05);
    Decay(s, 1, SafetyWeights{});
    CHECK(s[Need::kBelonging] == 0.0);
    CHECK(s[Subneed::kRiskAvoidance] == 0.0);
  }

  TEST_CASE("decay: negative compliance is never raised") {
    NeedsState s = UniformNeeds(0.5, 0.5, 0.05);
    s[Subneed::kCompliance] = -0.4;
    Decay(s, 3, SafetyWeights{});
    CHECK(s[Subneed::kCompliance] <= -0.4);
    CHECK(s[Subneed::kCompliance] >= -1.0);
  }

  TEST_CASE("composite: minimum of food and financial survival") {
    SubneedVector sub{0.1, 0.9, 1.0, 1.0, 1.0};
    CHECK(CompositeSafety(sub, SafetyWeights{}) == doctest::Approx(0.1));
  }

  TEST_CASE("composite: constant inputs") {
    SubneedVector sub{0.6, 0.6, 0.6, 0.6, 0.6};
    CHECK(CompositeSafety(sub, SafetyWeights{}) == doctest::Approx(0.6));
    CHECK(CompositeSafety(sub, SafetyWeights{0.2, 0.7, 0.1, true}) == doctest::Approx(0.6));
  }

  TEST_CASE("composite: weighted mean oracle") {
    // food 0.8, fin 0.9, risk 0.4 (w .75), compliance 0.8 (w .25) -> 0.5
    SubneedVector sub{0.8, 0.9, 0.4, 0.8, 0.0};
    CHECK(CompositeSafety(sub, kNoFinSafety) == doctest::Approx(0.5));
  }

  TEST_CASE("composite: financial safety only when enabled") {
    SubneedVector sub{1.0, 1.0, 1.0, 1.0, 0.0};
    CHECK(CompositeSafety(sub, SafetyWeights{0.5, 0.5, 1.0, false}) == doctest::Approx(1.0));
    CHECK(CompositeSafety(sub, SafetyWeights{0.5, 0.5, 1.0, true}) == doctest::Approx(0.5));
  }

  TEST_CASE("composite: negative compliance drags safety to zero floor") {
    SubneedVector sub{1.0, 1.0, 0.0, -1.0, 0.0};
    CHECK(CompositeSafety(sub, kNoFinSafety) == 0.0);
  }

  TEST_CASE("food safety level") {
    CHECK(FoodSafetyLevel(14.0) == 1.0);
    CHECK(FoodSafetyLevel(0.0) == 0.0);
    CHECK(FoodSafetyLevel(7.0) == doctest::Approx(0.5));
    CHECK(FoodSafetyLevel(30.0) == 1.0);
  }

  TEST_CASE("urgency") {
    NeedsState s = UniformNeeds(0.5, 0.5);
    const NeedVector imp{0.2, 0.3, 0.2, 0.1, 0.2};
    for (double u : Urgency(s, imp)) CHECK(u == 0.0);
    s[Need::kBelonging] = 0.0;
    CHECK(Urgency(s, imp)[Index(Need::kBelonging)] == doctest::Approx(0.3));
  }

  TEST_CASE("urgency: compliance has no slot of its own") {
    NeedsState s = UniformNeeds(1.0, 0.5);
    s[Subneed::kCompliance] = -0.2;
    RefreshComposite(s, SafetyWeights{});
    const NeedVector u = Urgency(s, NeedVector{0.2, 0.2, 0.2, 0.2, 0.2});
    CHECK(u.size() == kNumNeeds);
    // It shows up only through the composite safety level.
    CHECK(s[Need::kSafety] < 1.0);
  }

  TEST_CASE("expected gains: sick rest has maximal survival gain") {
    const NeedsCalibration cal = DefaultNeedsCalibration();
    AgentSituation a;
    a.needs = UniformNeeds(0.5, 0.5);
    a.believes_sick = true;
    const double rest =
        ExpectedGains(a, {ActivityKind::kRestAtHome, 0, false}, cal).need[Index(Need::kSurvival)];
    for (ActivityKind k : kAllActivityKinds) {
      if (k == ActivityKind::kRestAtHome) continue;
      CHECK(ExpectedGains(a, {k, 0, false}, cal).need[Index(Need::kSurvival)] < rest);
    }
  }

  TEST_CASE("expected gains: no risk penalty at zero prevalence") {
    const NeedsCalibration cal = DefaultNeedsCalibration();
    AgentSituation a;
    a.needs = UniformNeeds(0.5, 0.5);
    a.traits.risk_avoidance_weight = 1.0;
    a.prevalence = 0.0;
    const ActivityGains g = ExpectedGains(a, {ActivityKind::kShopEssential, 0, false}, cal);
    CHECK(g.sub[Index(Subneed::kRiskAvoidance)] == 0.0);
    a.prevalence = 0.1;
    const ActivityGains h = ExpectedGains(a, {ActivityKind::kShopEssential, 0, false}, cal);
    CHECK(h.sub[Index(Subneed::kRiskAvoidance)] ==
          doctest::Approx(-cal.gains.risk_penalty_scale * 0.1));
  }

  TEST_CASE("expected gains: breaking with full propensity costs the scale") {
    const NeedsCalibration cal = DefaultNeedsCalibration();
    AgentSituation a;
    a.needs = UniformNeeds(0.5, 0.5);
    a.traits.compliance_propensity = 1.0;
    const ActivityGains g = ExpectedGains(a, {ActivityKind::kLeisure, 0, true}, cal);
    CHECK(g.sub[Index(Subneed::kCompliance)] ==
          doctest::Approx(-1.0 * cal.gains.breaking_compliance_scale));
  }

  TEST_CASE("expected gains: company and conformity") {
    const NeedsCalibration cal = DefaultNeedsCalibration();
    AgentSituation a;
    a.needs = UniformNeeds(0.5, 0.5);
    a.cluster_share[Index(ActivityKind::kLeisure)] = 0.5;
    const ActivityGains g = ExpectedGains(a, {ActivityKind::kLeisure, 0, false}, cal);
    const double base = cal.gains[ActivityKind::kLeisure].need[Index(Need::kBelonging)];
    CHECK(g.need[Index(Need::kBelonging)] ==
          doctest::Approx(base * (1.0 + cal.gains.company_multiplier * 0.5)));
    CHECK(g.need[Index(Need::kSurvival)] == doctest::Approx(cal.gains.conformity_scale * 0.5));
  }

  TEST_CASE("choose: singleton context") {
    const NeedsCalibration cal = DefaultNeedsCalibration();
    AgentSituation a;
    a.needs = UniformNeeds(0.1, 0.5);
    FilteredContext ctx{{{ActivityKind::kRestAtHome, 3, false}}, {}};
    CHECK(ChooseActivity(a, ctx, cal).activity.kind == ActivityKind::kRestAtHome);
  }

  TEST_CASE("choose: tie-break by kind then place") {
    const NeedsCalibration cal = DefaultNeedsCalibration();
    AgentSituation a;
    a.needs = UniformNeeds(1.0, 0.5);  // nothing urgent, every score is zero
    RefreshComposite(a.needs, cal.safety_weights);
    FilteredContext ctx{{{ActivityKind::kLeisure, 2, false},
                         {ActivityKind::kStayHome, 9, false},
                         {ActivityKind::kStayHome, 4, false}},
                        {}};
    const Choice c = ChooseActivity(a, ctx, cal);
    CHECK(c.activity.kind == ActivityKind::kStayHome);
    CHECK(c.activity.place == 4);
  }

  TEST_CASE("choose: lonely agent under lockdown goes shopping if open") {
    const NeedsCalibration cal = DefaultNeedsCalibration();
    AgentSituation a;
    a.needs = UniformNeeds(1.0, 0.5);
    a.needs.threshold = {0.6, 0.9, 0.9, 0.75, 0.7};
    a.needs[Need::kBelonging] = 0.1;
    RefreshComposite(a.needs, cal.safety_weights);
    FilteredContext ctx{{{ActivityKind::kStayHome, 0, false},
                         {ActivityKind::kShopNonessential, 5, false}},
                        {{ActivityKind::kLeisure, 6, false}}};
    CHECK(ChooseActivity(a, ctx, cal).activity.kind == ActivityKind::kShopNonessential);
    ctx.allowed.pop_back();
    CHECK(ChooseActivity(a, ctx, cal).activity.kind == ActivityKind::kStayHome);
  }

  TEST_CASE("choose: low autonomy can break the rules") {
    const NeedsCalibration cal = DefaultNeedsCalibration();
    AgentSituation a;
    a.needs = UniformNeeds(1.0, 0.5);
    a.needs.threshold = {0.6, 0.9, 0.9, 0.75, 0.7};
    a.needs[Need::kBelonging] = 0.1;
    a.needs[Need::kAutonomy] = 0.1;
    a.traits.compliance_propensity = 0.1;
    RefreshComposite(a.needs, cal.safety_weights);
    FilteredContext ctx{{{ActivityKind::kStayHome, 0, false}},
                        {{ActivityKind::kLeisure, 6, false}}};
    const Choice c = ChooseActivity(a, ctx, cal);
    CHECK(c.activity.kind == ActivityKind::kLeisure);
    CHECK(c.activity.breaks_policy);
  }

  TEST_CASE("apply effects") {
    NeedsState s = UniformNeeds(0.5, 0.5);
    s[Need::kBelonging] = 0.2;
    ActivityGains g;
    g.need[Index(Need::kBelonging)] = 0.3;
    ApplyEffects(s, g, SafetyWeights{});
    CHECK(s[Need::kBelonging] == doctest::Approx(0.5));

    NeedsState z = UniformNeeds(0.5, 0.5);
    RefreshComposite(z, SafetyWeights{});
    const NeedsState before = z;
    ApplyEffects(z, ActivityGains{}, SafetyWeights{});
    CHECK(z == before);
  }

  TEST_CASE("apply effects: breaking lowers compliance, possibly below zero") {
    const NeedsCalibration cal = DefaultNeedsCalibration();
    AgentSituation a;
    a.needs = UniformNeeds(0.2, 0.5);
    a.traits.compliance_propensity = 0.9;
    const ActivityGains g = ExpectedGains(a, {ActivityKind::kShopNonessential, 1, true}, cal);
    NeedsState s = a.needs;
    ApplyEffects(s, g, cal.safety_weights);
    CHECK(s[Subneed::kCompliance] < 0.2);
    CHECK(s[Subneed::kCompliance] < 0.0);
  }

  TEST_CASE("calibration validation") {
    NeedsCalibration cal = DefaultNeedsCalibration();
    CHECK_NOTHROW(ValidateCalibration(cal));
    cal.gains[ActivityKind::kVisitDoctor].need[Index(Need::kSurvival)] = 0.5;
    CHECK_THROWS_AS(ValidateCalibration(cal), std::invalid_argument);
    cal = DefaultNeedsCalibration();
    cal.need[0].threshold = 1.0;
    CHECK_THROWS_AS(ValidateCalibration(cal), std::invalid_argument);
  }
}

}  // namespace
}  // namespace needsim
