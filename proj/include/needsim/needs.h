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

#ifndef NEEDSIM_NEEDS_H_
#define NEEDSIM_NEEDS_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "needsim/types.h"

namespace needsim {

enum class Need : std::uint8_t {
  kSafety,
  kBelonging,
  kSelfEsteem,
  kAutonomy,
  kSurvival,
};
inline constexpr std::size_t kNumNeeds = 5;

enum class Subneed : std::uint8_t {
  kFoodSafety,
  kFinancialSurvival,
  kRiskAvoidance,
  kCompliance,
  kFinancialSafety,
};
inline constexpr std::size_t kNumSubneeds = 5;

std::string_view ToString(Need n);
std::string_view ToString(Subneed s);
std::optional<Need> ParseNeed(std::string_view s);
std::optional<Subneed> ParseSubneed(std::string_view s);

using NeedVector = std::array<double, kNumNeeds>;
using SubneedVector = std::array<double, kNumSubneeds>;

// Weights of the averaged part of the composite safety need. Food safety and
// financial survival enter through a hard minimum instead.
struct SafetyWeights {
  double risk_avoidance = 0.5;
  double compliance = 0.4;
  double financial_safety = 0.1;
  bool include_financial_safety = true;

  bool operator==(const SafetyWeights&) const = default;
};

// Water-tank state. Tank size is fixed at 1; the threshold marks "full
// enough" and normalizes urgency. The safety entry of `level` is always the
// composite of the subneeds.
struct NeedsState {
  NeedVector level{};
  NeedVector threshold{};
  NeedVector decay_per_tick{};
  SubneedVector sub_level{};
  SubneedVector sub_decay_per_tick{};

  double& operator[](Need n) { return level[Index(n)]; }
  double operator[](Need n) const { return level[Index(n)]; }
  double& operator[](Subneed s) { return sub_level[Index(s)]; }
  double operator[](Subneed s) const { return sub_level[Index(s)]; }

  bool operator==(const NeedsState&) const = default;
};

struct Activity {
  ActivityKind kind = ActivityKind::kStayHome;
  PlaceId place = kNoPlace;
  bool breaks_policy = false;

  bool operator==(const Activity&) const = default;
};

using ActivityContext = std::vector<Activity>;

struct FilteredContext {
  ActivityContext allowed;
  // Activities removed by policy. They stay representable so that an agent
  // low on autonomy may still pick one and break the rule.
  ActivityContext removed;
};

struct ActivityGains {
  NeedVector need{};
  SubneedVector sub{};

  bool operator==(const ActivityGains&) const = default;
};

// Activity x need gain table plus the context modifiers applied on top.
struct GainTable {
  std::array<ActivityGains, kNumActivityKinds> base{};
  // Belonging gain is multiplied by (1 + company_multiplier * company).
  double company_multiplier = 1.0;
  // Positive survival gains are multiplied by this when the agent believes it
  // is sick.
  double sick_survival_multiplier = 6.0;
  // Leaving home costs risk_avoidance = scale * risk weight * prevalence.
  double risk_penalty_scale = 4.0;
  // Policy-breaking costs compliance = scale * compliance propensity.
  double breaking_compliance_scale = 0.5;
  // Survival bonus per unit fraction of the social cluster doing the same.
  double conformity_scale = 0.05;

  const ActivityGains& operator[](ActivityKind k) const { return base[Index(k)]; }
  ActivityGains& operator[](ActivityKind k) { return base[Index(k)]; }

  bool operator==(const GainTable&) const = default;
};

struct NeedParams {
  double threshold = 0.5;
  double decay_per_tick = 0.0;
  double importance = 0.2;

  bool operator==(const NeedParams&) const = default;
};

struct SubneedParams {
  double decay_per_tick = 0.0;

  bool operator==(const SubneedParams&) const = default;
};

struct NeedsCalibration {
  std::array<NeedParams, kNumNeeds> need{};
  std::array<SubneedParams, kNumSubneeds> subneed{};
  SafetyWeights safety_weights{};
  GainTable gains{};
  // Extra survival drain per tick while the agent believes it is sick.
  double sick_survival_drain = 0.06;
  // Days of essential supplies at which food safety is fully satisfied.
  double food_safety_days = 14.0;

  bool operator==(const NeedsCalibration&) const = default;
};

NeedsCalibration DefaultNeedsCalibration();

// Throws std::invalid_argument naming the offending entry.
void ValidateCalibration(const NeedsCalibration& cal);

struct Traits {
  double risk_avoidance_weight = 0.5;
  double compliance_propensity = 0.5;
  // Normalized to sum to 1.
  NeedVector importance{0.2, 0.2, 0.2, 0.2, 0.2};

  bool operator==(const Traits&) const = default;
};

Traits MakeTraits(double risk_avoidance_weight, double compliance_propensity,
                  NeedVector raw_importance);

// Everything the deliberation needs to know about one agent at one tick.
struct AgentSituation {
  NeedsState needs;
  Traits traits;
  bool believes_sick = false;
  double essential_stock = 0.0;
  // Days of supplies the agent could fill up to and afford right now.
  double essential_days_affordable = 0.0;
  // Estimated fraction of the population currently sick.
  double prevalence = 0.0;
  // Fraction of the social cluster that did each activity kind last tick.
  std::array<double, kNumActivityKinds> cluster_share{};
};

double Clamp01(double x);
double ClampLevel(Subneed s, double x);

// Food safety is fully satisfied with two weeks of supplies at home.
double FoodSafetyLevel(double essential_stock, double full_days = 14.0);

double CompositeSafety(const SubneedVector& sub, const SafetyWeights& weights);

// Lowers every level by decay * ticks and recomputes the composite.
void Decay(NeedsState& needs, int ticks_elapsed, const SafetyWeights& weights);

// Recomputes level[kSafety] from the subneeds.
void RefreshComposite(NeedsState& needs, const SafetyWeights& weights);

// importance * max(0, threshold - level) / threshold for every need.
NeedVector Urgency(const NeedsState& needs, const NeedVector& importance);

ActivityGains ExpectedGains(const AgentSituation& agent, const Activity& activity,
                            const NeedsCalibration& cal);

double Score(const NeedVector& urgency, const NeedVector& gain);

// True when a ranks ahead of b on equal score.
bool TieBreakBefore(const Activity& a, const Activity& b);

struct Choice {
  Activity activity;
  double score = 0.0;
  ActivityGains gains;
};

// Picks the best scoring candidate. Removed activities are candidates only
// when autonomy has dropped below its threshold; they come back flagged
// breaks_policy.
Choice ChooseActivity(const AgentSituation& agent, const FilteredContext& context,
                      const NeedsCalibration& cal);

// Adds realized gains to belonging, self-esteem, autonomy, survival,
// risk avoidance and compliance. Food safety and the financial subneeds are
// derived from stock and wealth by the caller.
void ApplyEffects(NeedsState& needs, const ActivityGains& realized,
                  const SafetyWeights& weights);

}  // namespace needsim

#endif  // NEEDSIM_NEEDS_H_
