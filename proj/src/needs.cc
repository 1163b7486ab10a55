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

#include "needsim/needs.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace needsim {
namespace {

constexpr std::array<std::string_view, kNumNeeds> kNeedNames = {
    "safety", "belonging", "self_esteem", "autonomy", "survival"};
constexpr std::array<std::string_view, kNumSubneeds> kSubneedNames = {
    "food_safety", "financial_survival", "risk_avoidance", "compliance",
    "financial_safety"};

// Subneeds that the world derives from stock and wealth rather than from
// activity gains.
bool IsDerived(Subneed s) {
  return s == Subneed::kFoodSafety || s == Subneed::kFinancialSurvival ||
         s == Subneed::kFinancialSafety;
}

void SetGains(GainTable& t, ActivityKind k, double belonging, double self_esteem,
              double autonomy, double survival, double risk, double compliance) {
  auto& g = t[k];
  g.need[Index(Need::kBelonging)] = belonging;
  g.need[Index(Need::kSelfEsteem)] = self_esteem;
  g.need[Index(Need::kAutonomy)] = autonomy;
  g.need[Index(Need::kSurvival)] = survival;
  g.sub[Index(Subneed::kRiskAvoidance)] = risk;
  g.sub[Index(Subneed::kCompliance)] = compliance;
}

}  // namespace

std::string_view ToString(Need n) { return kNeedNames[Index(n)]; }
std::string_view ToString(Subneed s) { return kSubneedNames[Index(s)]; }

std::optional<Need> ParseNeed(std::string_view s) {
  for (std::size_t i = 0; i < kNumNeeds; ++i) {
    if (kNeedNames[i] == s) return static_cast<Need>(i);
  }
  return std::nullopt;
}

std::optional<Subneed> ParseSubneed(std::string_view s) {
  for (std::size_t i = 0; i < kNumSubneeds; ++i) {
    if (kSubneedNames[i] == s) return static_cast<Subneed>(i);
  }
  return std::nullopt;
}

NeedsCalibration DefaultNeedsCalibration() {
  NeedsCalibration cal;
  cal.need[Index(Need::kSafety)] = {0.6, 0.0, 0.25};
  cal.need[Index(Need::kBelonging)] = {0.9, 0.05, 0.2};
  cal.need[Index(Need::kSelfEsteem)] = {0.9, 0.08, 0.2};
  cal.need[Index(Need::kAutonomy)] = {0.75, 0.03, 0.15};
  cal.need[Index(Need::kSurvival)] = {0.7, 0.02, 0.2};
  cal.subneed[Index(Subneed::kRiskAvoidance)].decay_per_tick = 0.01;
  cal.subneed[Index(Subneed::kCompliance)].decay_per_tick = 0.005;

  GainTable& t = cal.gains;
  //                                     bel    est    aut    surv   risk   comp
  SetGains(t, ActivityKind::kRestAtHome, 0.00, 0.00, 0.00, 0.12, 0.02, 0.00);
  SetGains(t, ActivityKind::kStayHome, 0.03, 0.00, 0.02, 0.04, 0.02, 0.00);
  SetGains(t, ActivityKind::kWorkAtHome, 0.01, 0.15, 0.02, 0.00, 0.01, 0.02);
  SetGains(t, ActivityKind::kWorkAtOffice, 0.12, 0.20, 0.00, 0.00, 0.00, 0.03);
  SetGains(t, ActivityKind::kAttendSchool, 0.20, 0.12, 0.00, 0.00, 0.00, 0.03);
  SetGains(t, ActivityKind::kShopEssential, 0.02, 0.00, 0.06, 0.00, 0.00, 0.00);
  SetGains(t, ActivityKind::kShopNonessential, 0.12, 0.08, 0.15, 0.00, 0.00, 0.00);
  SetGains(t, ActivityKind::kLeisure, 0.25, 0.04, 0.12, 0.00, 0.00, 0.00);
  SetGains(t, ActivityKind::kVisitDoctor, 0.00, 0.00, 0.00, 0.10, 0.00, 0.00);
  t[ActivityKind::kWorkAtHome].sub[Index(Subneed::kFinancialSurvival)] = 0.02;
  t[ActivityKind::kWorkAtOffice].sub[Index(Subneed::kFinancialSurvival)] = 0.02;
  t.sick_survival_multiplier = 10.0;
  return cal;
}

void ValidateCalibration(const NeedsCalibration& cal) {
  auto fail = [](const std::string& what) {
    throw std::invalid_argument("needs calibration: " + what);
  };
  for (std::size_t n = 0; n < kNumNeeds; ++n) {
    const auto& p = cal.need[n];
    const std::string name(kNeedNames[n]);
    if (!(p.threshold > 0.0 && p.threshold < 1.0)) fail(name + ".threshold must be in (0,1)");
    if (!(p.decay_per_tick >= 0.0)) fail(name + ".decay must be >= 0");
    if (!(p.importance > 0.0)) fail(name + ".importance must be > 0");
  }
  for (std::size_t s = 0; s < kNumSubneeds; ++s) {
    if (!(cal.subneed[s].decay_per_tick >= 0.0)) {
      fail(std::string(kSubneedNames[s]) + ".decay must be >= 0");
    }
  }
  const auto& w = cal.safety_weights;
  if (!(w.risk_avoidance > 0.0 && w.compliance > 0.0)) {
    fail("safety weights must be positive");
  }
  if (w.include_financial_safety && !(w.financial_safety > 0.0)) {
    fail("financial_safety weight must be positive when included");
  }
  for (const auto& g : cal.gains.base) {
    for (double x : g.need) {
      if (!std::isfinite(x)) fail("gain table entries must be finite");
    }
    for (double x : g.sub) {
      if (!std::isfinite(x)) fail("gain table entries must be finite");
    }
  }
  const double rest = cal.gains[ActivityKind::kRestAtHome].need[Index(Need::kSurvival)];
  for (ActivityKind k : kAllActivityKinds) {
    if (k == ActivityKind::kRestAtHome) continue;
    if (cal.gains[k].need[Index(Need::kSurvival)] >= rest) {
      fail("rest_at_home must carry the unique largest survival gain");
    }
  }
  if (!(cal.gains.sick_survival_multiplier >= 1.0)) fail("sick_survival_multiplier must be >= 1");
  if (!(cal.food_safety_days > 0.0)) fail("food_safety_days must be > 0");
  if (!(cal.sick_survival_drain >= 0.0)) fail("sick_survival_drain must be >= 0");
}

Traits MakeTraits(double risk_avoidance_weight, double compliance_propensity,
                  NeedVector raw_importance) {
  Traits t;
  t.risk_avoidance_weight = Clamp01(risk_avoidance_weight);
  t.compliance_propensity = Clamp01(compliance_propensity);
  double total = 0.0;
  for (double w : raw_importance) total += w;
  if (!(total > 0.0)) throw std::invalid_argument("importance weights must be positive");
  for (std::size_t i = 0; i < kNumNeeds; ++i) t.importance[i] = raw_importance[i] / total;
  return t;
}

double Clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

double ClampLevel(Subneed s, double x) {
  return s == Subneed::kCompliance ? std::clamp(x, -1.0, 1.0) : Clamp01(x);
}

double FoodSafetyLevel(double essential_stock, double full_days) {
  return Clamp01(essential_stock / full_days);
}

double CompositeSafety(const SubneedVector& sub, const SafetyWeights& w) {
  const double survival_part = std::min(sub[Index(Subneed::kFoodSafety)],
                                        sub[Index(Subneed::kFinancialSurvival)]);
  double num = w.risk_avoidance * sub[Index(Subneed::kRiskAvoidance)] +
               w.compliance * sub[Index(Subneed::kCompliance)];
  double den = w.risk_avoidance + w.compliance;
  if (w.include_financial_safety) {
    num += w.financial_safety * sub[Index(Subneed::kFinancialSafety)];
    den += w.financial_safety;
  }
  // A negative compliance can pull the mean below zero; the need itself
  // stays in [0,1].
  return Clamp01(std::min(survival_part, num / den));
}

void RefreshComposite(NeedsState& needs, const SafetyWeights& weights) {
  needs[Need::kSafety] = CompositeSafety(needs.sub_level, weights);
}

void Decay(NeedsState& needs, int ticks_elapsed, const SafetyWeights& weights) {
  if (ticks_elapsed <= 0) return;
  for (std::size_t n = 0; n < kNumNeeds; ++n) {
    if (static_cast<Need>(n) == Need::kSafety) continue;
    const double lowered = needs.level[n] - needs.decay_per_tick[n] * ticks_elapsed;
    needs.level[n] = std::min(needs.level[n], Clamp01(lowered));
  }
  for (std::size_t s = 0; s < kNumSubneeds; ++s) {
    const auto which = static_cast<Subneed>(s);
    const double current = needs.sub_level[s];
    double lowered = current - needs.sub_decay_per_tick[s] * ticks_elapsed;
    // Only rule-breaking drives compliance below zero.
    if (which == Subneed::kCompliance) lowered = std::max(lowered, std::min(current, 0.0));
    needs.sub_level[s] = std::min(current, ClampLevel(which, lowered));
  }
  RefreshComposite(needs, weights);
}

NeedVector Urgency(const NeedsState& needs, const NeedVector& importance) {
  NeedVector u{};
  for (std::size_t n = 0; n < kNumNeeds; ++n) {
    const double thr = needs.threshold[n];
    u[n] = importance[n] * std::max(0.0, thr - needs.level[n]) / thr;
  }
  return u;
}

ActivityGains ExpectedGains(const AgentSituation& agent, const Activity& activity,
                            const NeedsCalibration& cal) {
  const GainTable& table = cal.gains;
  if (Index(activity.kind) >= kNumActivityKinds) {
    throw std::logic_error("unknown activity kind");
  }
  ActivityGains g = table[activity.kind];
  const std::size_t kind = Index(activity.kind);

  g.need[Index(Need::kBelonging)] *= 1.0 + table.company_multiplier * agent.cluster_share[kind];

  double& survival = g.need[Index(Need::kSurvival)];
  if (agent.believes_sick && survival > 0.0) survival *= table.sick_survival_multiplier;
  survival += table.conformity_scale * agent.cluster_share[kind];

  if (!IsHomeActivity(activity.kind)) {
    g.sub[Index(Subneed::kRiskAvoidance)] -=
        table.risk_penalty_scale * agent.traits.risk_avoidance_weight * agent.prevalence;
  }
  if (activity.breaks_policy) {
    g.sub[Index(Subneed::kCompliance)] =
        -table.breaking_compliance_scale * agent.traits.compliance_propensity;
  }
  if (activity.kind == ActivityKind::kShopEssential) {
    const double after = FoodSafetyLevel(
        agent.essential_stock + agent.essential_days_affordable, cal.food_safety_days);
    g.sub[Index(Subneed::kFoodSafety)] +=
        after - FoodSafetyLevel(agent.essential_stock, cal.food_safety_days);
  }

  // The safety gain is the change it would make to the composite.
  SubneedVector projected = agent.needs.sub_level;
  for (std::size_t s = 0; s < kNumSubneeds; ++s) {
    projected[s] = ClampLevel(static_cast<Subneed>(s), projected[s] + g.sub[s]);
  }
  g.need[Index(Need::kSafety)] =
      CompositeSafety(projected, cal.safety_weights) - agent.needs[Need::kSafety];
  return g;
}

double Score(const NeedVector& urgency, const NeedVector& gain) {
  double s = 0.0;
  for (std::size_t n = 0; n < kNumNeeds; ++n) s += urgency[n] * gain[n];
  return s;
}

bool TieBreakBefore(const Activity& a, const Activity& b) {
  if (a.kind != b.kind) return Index(a.kind) < Index(b.kind);
  return a.place < b.place;
}

Choice ChooseActivity(const AgentSituation& agent, const FilteredContext& context,
                      const NeedsCalibration& cal) {
  const NeedVector urgency = Urgency(agent.needs, agent.traits.importance);
  std::optional<Choice> best;
  auto consider = [&](Activity a) {
    ActivityGains gains = ExpectedGains(agent, a, cal);
    const double s = Score(urgency, gains.need);
    if (!best || s > best->score ||
        (s == best->score && TieBreakBefore(a, best->activity))) {
      best = Choice{a, s, gains};
    }
  };
  for (Activity a : context.allowed) {
    a.breaks_policy = false;
    consider(a);
  }
  const double autonomy_threshold = agent.needs.threshold[Index(Need::kAutonomy)];
  if (agent.needs[Need::kAutonomy] < autonomy_threshold) {
    for (Activity a : context.removed) {
      a.breaks_policy = true;
      consider(a);
    }
  }
  if (!best) throw std::logic_error("deliberation over an empty context");
  return *best;
}

void ApplyEffects(NeedsState& needs, const ActivityGains& realized,
                  const SafetyWeights& weights) {
  for (std::size_t n = 0; n < kNumNeeds; ++n) {
    if (static_cast<Need>(n) == Need::kSafety) continue;
    needs.level[n] = Clamp01(needs.level[n] + realized.need[n]);
  }
  for (std::size_t s = 0; s < kNumSubneeds; ++s) {
    const auto which = static_cast<Subneed>(s);
    if (IsDerived(which)) continue;
    needs.sub_level[s] = ClampLevel(which, needs.sub_level[s] + realized.sub[s]);
  }
  RefreshComposite(needs, weights);
}

}  // namespace needsim
