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

#include "needsim/policy.h"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

#include "needsim/world.h"

namespace needsim {
namespace {

constexpr std::array<std::string_view, kNumPolicyKinds> kPolicyNames = {
    "close_schools", "close_workplaces_telework", "close_nonessential_shops", "lockdown",
    "social_distancing", "testing", "wage_takeover"};

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

bool LockdownAllows(ActivityKind k, bool essential_worker) {
  switch (k) {
    case ActivityKind::kRestAtHome:
    case ActivityKind::kStayHome:
    case ActivityKind::kWorkAtHome:
    case ActivityKind::kShopEssential:
    case ActivityKind::kVisitDoctor:
      return true;
    case ActivityKind::kWorkAtOffice:
      return essential_worker;
    default:
      return false;
  }
}

}  // namespace

std::string_view ToString(PolicyKind k) { return kPolicyNames[Index(k)]; }

std::optional<PolicyKind> ParsePolicyKind(std::string_view s) {
  for (std::size_t i = 0; i < kNumPolicyKinds; ++i) {
    if (kPolicyNames[i] == s) return static_cast<PolicyKind>(i);
  }
  return std::nullopt;
}

Condition ParseCondition(std::string_view text) {
  const std::string original(text);
  auto fail = [&]() -> Condition {
    throw std::invalid_argument("bad condition '" + original +
                                "' (expected: detected|infected_fraction|tick >=|<= number)");
  };
  Condition c;
  std::size_t op_pos = text.find(">=");
  if (op_pos != std::string_view::npos) {
    c.op = Condition::Op::kAtLeast;
  } else if ((op_pos = text.find("<=")) != std::string_view::npos) {
    c.op = Condition::Op::kAtMost;
  } else {
    return fail();
  }
  const std::string_view metric = Trim(text.substr(0, op_pos));
  const std::string_view number = Trim(text.substr(op_pos + 2));
  if (metric == "detected") {
    c.metric = Condition::Metric::kDetected;
  } else if (metric == "infected_fraction") {
    c.metric = Condition::Metric::kInfectedFraction;
  } else if (metric == "tick") {
    c.metric = Condition::Metric::kTick;
  } else {
    return fail();
  }
  if (number.empty()) return fail();
  const auto res = std::from_chars(number.data(), number.data() + number.size(), c.value);
  if (res.ec != std::errc() || res.ptr != number.data() + number.size()) return fail();
  return c;
}

std::string FormatCondition(const Condition& c) {
  std::string out;
  switch (c.metric) {
    case Condition::Metric::kDetected: out = "detected"; break;
    case Condition::Metric::kInfectedFraction: out = "infected_fraction"; break;
    case Condition::Metric::kTick: out = "tick"; break;
  }
  out += c.op == Condition::Op::kAtLeast ? " >= " : " <= ";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), c.value);
  out.append(buf, res.ptr);
  return out;
}

bool Holds(const Condition& c, const TriggerInputs& in) {
  double x = 0.0;
  switch (c.metric) {
    case Condition::Metric::kDetected: x = in.detected; break;
    case Condition::Metric::kInfectedFraction: x = in.infected_fraction; break;
    case Condition::Metric::kTick: x = static_cast<double>(in.tick); break;
  }
  return c.op == Condition::Op::kAtLeast ? x >= c.value : x <= c.value;
}

PolicySet PolicySet::FromSpecs(std::span<const PolicySpec> specs) {
  PolicySet set;
  for (const auto& s : specs) set.policies.push_back(Policy{s});
  return set;
}

bool PolicySet::IsActive(PolicyKind k) const { return FindActive(k) != nullptr; }

const Policy* PolicySet::FindActive(PolicyKind k) const {
  for (const auto& p : policies) {
    if (p.active && p.spec.kind == k) return &p;
  }
  return nullptr;
}

double PolicySet::ContagionMultiplier() const {
  double m = 1.0;
  for (const auto& p : policies) {
    if (p.active && p.spec.kind == PolicyKind::kSocialDistancing) m *= p.spec.contagion_multiplier;
  }
  return m;
}

int EvaluateTriggers(PolicySet& set, const TriggerInputs& in) {
  int changes = 0;
  for (std::size_t i = 0; i < set.policies.size(); ++i) {
    Policy& p = set.policies[i];
    if (!p.active && !p.released && Holds(p.spec.trigger, in)) {
      p.active = true;
      p.activated_tick = in.tick;
      set.log.push_back({in.tick, i, p.spec.kind, true});
      ++changes;
    } else if (p.active && p.spec.release && Holds(*p.spec.release, in)) {
      p.active = false;
      p.released = true;
      p.released_tick = in.tick;
      set.log.push_back({in.tick, i, p.spec.kind, false});
      ++changes;
    }
  }
  return changes;
}

bool IsPlaceClosed(const Place& place, const PolicySet& set) {
  const bool lockdown = set.IsActive(PolicyKind::kLockdown);
  switch (place.kind) {
    case PlaceKind::kSchool:
      return lockdown || set.IsActive(PolicyKind::kCloseSchools);
    case PlaceKind::kNonessentialShop:
      return lockdown || set.IsActive(PolicyKind::kCloseNonessentialShops);
    case PlaceKind::kLeisure:
    case PlaceKind::kWorkplace:
      return lockdown;
    default:
      return false;
  }
}

bool IsEssentialWorker(const Agent& agent, std::span<const Place> places) {
  if (!agent.employed()) return false;
  const PlaceKind k = places[static_cast<std::size_t>(agent.work_or_school)].kind;
  return k == PlaceKind::kEssentialShop || k == PlaceKind::kHospital;
}

FilteredContext FilterContext(const ActivityContext& context, const PolicySet& set,
                              const Agent& agent, std::span<const Place> places,
                              bool working_segment) {
  FilteredContext out;
  const bool lockdown = set.IsActive(PolicyKind::kLockdown);
  const bool telework_order = set.IsActive(PolicyKind::kCloseWorkplacesTelework);
  const bool essential = lockdown && IsEssentialWorker(agent, places);
  for (const Activity& a : context) {
    bool removed = false;
    if (a.kind != ActivityKind::kRestAtHome && a.kind != ActivityKind::kStayHome) {
      if (a.place != kNoPlace && !IsHomeActivity(a.kind) &&
          IsPlaceClosed(places[static_cast<std::size_t>(a.place)], set)) {
        removed = true;
      }
      if (lockdown && !LockdownAllows(a.kind, essential)) removed = true;
      if (telework_order && a.kind == ActivityKind::kWorkAtOffice && agent.telework_capable &&
          places[static_cast<std::size_t>(a.place)].kind == PlaceKind::kWorkplace) {
        removed = true;
      }
      // Caregivers stay home while they would otherwise be at work or school.
      if (agent.is_caregiver && working_segment && !IsHomeActivity(a.kind) &&
          a.kind != ActivityKind::kVisitDoctor) {
        removed = true;
      }
    }
    (removed ? out.removed : out.allowed).push_back(a);
  }
  return out;
}

std::vector<CaregiverAssignment> AssignCaregivers(World& world) {
  std::vector<CaregiverAssignment> out;
  for (Agent& a : world.agents) a.is_caregiver = false;
  if (!world.active_policies.IsActive(PolicyKind::kCloseSchools)) return out;
  for (const Household& h : world.households) {
    // Co-parenting children move between the two homes, so the hosting home
    // is found from the children themselves.
    PlaceId hosting = kNoPlace;
    for (AgentId id : h.members) {
      const Agent& m = world.agents[static_cast<std::size_t>(id)];
      if (m.age_group == AgeGroup::kChild && m.alive()) {
        hosting = world.ResidenceOf(m);
        break;
      }
    }
    if (hosting == kNoPlace) continue;
    AgentId pick = -1;
    AgentId fallback = -1;
    for (AgentId id : h.members) {
      const Agent& m = world.agents[static_cast<std::size_t>(id)];
      if (!IsAdult(m.age_group) || !m.alive() || m.health.doctor_visit_pending) continue;
      if (world.ResidenceOf(m) != hosting) continue;
      if (m.telework_capable && (pick < 0 || id < pick)) pick = id;
      if (fallback < 0 || id < fallback) fallback = id;
    }
    if (pick < 0) pick = fallback;
    if (pick >= 0) world.agents[static_cast<std::size_t>(pick)].is_caregiver = true;
    out.push_back({h.id, pick});
  }
  return out;
}

}  // namespace needsim
