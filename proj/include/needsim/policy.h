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

#ifndef NEEDSIM_POLICY_H_
#define NEEDSIM_POLICY_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "needsim/epidemic.h"
#include "needsim/model.h"
#include "needsim/needs.h"

namespace needsim {

struct World;

enum class PolicyKind : std::uint8_t {
  kCloseSchools,
  kCloseWorkplacesTelework,
  kCloseNonessentialShops,
  kLockdown,
  kSocialDistancing,
  kTesting,
  kWageTakeover,
};
inline constexpr std::size_t kNumPolicyKinds = 7;

std::string_view ToString(PolicyKind k);
std::optional<PolicyKind> ParsePolicyKind(std::string_view s);

// `metric op value`, e.g. "detected >= 1", "infected_fraction >= 0.05",
// "tick >= 40". Release conditions may also use "<=".
struct Condition {
  enum class Metric : std::uint8_t { kDetected, kInfectedFraction, kTick };
  enum class Op : std::uint8_t { kAtLeast, kAtMost };
  Metric metric = Metric::kDetected;
  Op op = Op::kAtLeast;
  double value = 1.0;

  bool operator==(const Condition&) const = default;
};

// Throws std::invalid_argument with the offending text.
Condition ParseCondition(std::string_view text);
std::string FormatCondition(const Condition& c);

struct TriggerInputs {
  Tick tick = 0;
  // Cumulative number of agents ever detected.
  int detected = 0;
  double infected_fraction = 0.0;
};

bool Holds(const Condition& c, const TriggerInputs& in);

struct PolicySpec {
  PolicyKind kind = PolicyKind::kCloseSchools;
  Condition trigger;
  std::optional<Condition> release;
  // Social distancing multiplier on every place's contagion base.
  double contagion_multiplier = 0.5;
  TestingParams testing;

  bool operator==(const PolicySpec&) const = default;
};

struct Policy {
  PolicySpec spec;
  bool active = false;
  bool released = false;
  Tick activated_tick = -1;
  Tick released_tick = -1;

  bool operator==(const Policy&) const = default;
};

struct PolicyEvent {
  Tick tick = 0;
  std::size_t index = 0;
  PolicyKind kind = PolicyKind::kCloseSchools;
  bool activated = true;

  bool operator==(const PolicyEvent&) const = default;
};

// Policies are evaluated in list order.
struct PolicySet {
  std::vector<Policy> policies;
  std::vector<PolicyEvent> log;

  static PolicySet FromSpecs(std::span<const PolicySpec> specs);
  bool IsActive(PolicyKind k) const;
  const Policy* FindActive(PolicyKind k) const;
  // Product of active social-distancing multipliers.
  double ContagionMultiplier() const;

  bool operator==(const PolicySet&) const = default;
};

// Activates inactive policies whose trigger holds and releases active ones
// whose release condition holds. Once released a policy stays off. Returns
// the number of state changes.
int EvaluateTriggers(PolicySet& set, const TriggerInputs& in);

bool IsPlaceClosed(const Place& place, const PolicySet& set);

// True for employees of places that stay open under lockdown.
bool IsEssentialWorker(const Agent& agent, std::span<const Place> places);

// Splits the context into what policy allows and what it removes. Rest and
// stay-home are never removed.
FilteredContext FilterContext(const ActivityContext& context, const PolicySet& set,
                              const Agent& agent, std::span<const Place> places,
                              bool working_segment);

struct CaregiverAssignment {
  int household = -1;
  // -1 when no adult is available.
  AgentId caregiver = -1;

  bool operator==(const CaregiverAssignment&) const = default;
};

// With schools closed, flags one adult per household that hosts a
// school-age child: the lowest-id telework-capable adult, else the lowest-id
// adult. Without closure every flag is cleared.
std::vector<CaregiverAssignment> AssignCaregivers(World& world);

}  // namespace needsim

#endif  // NEEDSIM_POLICY_H_
