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

#ifndef NEEDSIM_MODEL_H_
#define NEEDSIM_MODEL_H_

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "needsim/epidemic.h"
#include "needsim/needs.h"
#include "needsim/types.h"

namespace needsim {

struct Agent {
  AgentId id = 0;
  AgeGroup age_group = AgeGroup::kWorker;
  PlaceId home = kNoPlace;
  // Second residence of co-parenting children; they alternate weekly.
  PlaceId alt_home = kNoPlace;
  // Employer for workers, school or university for children and students.
  PlaceId work_or_school = kNoPlace;
  bool telework_capable = false;
  // Commutes through a station on the way to work or school.
  bool commuter = false;
  int household = -1;
  int cluster = -1;
  Traits traits;
  NeedsState needs;
  HealthState health;
  Money wealth = 0;
  double essential_stock = 0.0;
  bool is_caregiver = false;
  PlaceId current_place = kNoPlace;
  Activity last_activity;
  bool worked_today = false;

  bool alive() const { return health.alive(); }
  bool employed() const {
    return age_group == AgeGroup::kWorker && work_or_school != kNoPlace;
  }
  bool operator==(const Agent&) const = default;
};

struct Place {
  PlaceId id = kNoPlace;
  PlaceKind kind = PlaceKind::kHome;
  double contagion_base = 0.0;
  int capacity = 1;
  bool is_university = false;
  // Rebuilt every tick in ascending id order.
  std::vector<AgentId> occupants;
  Money wealth = 0;
  std::vector<AgentId> employees;
  bool insolvent = false;

  bool operator==(const Place&) const = default;
};

enum class HouseholdKind : std::uint8_t {
  kFamily,
  kStudentShared,
  kRetirementHome,
  kThreeGeneration,
  kCoParenting,
};
inline constexpr std::size_t kNumHouseholdKinds = 5;

std::string_view ToString(HouseholdKind k);
std::optional<HouseholdKind> ParseHouseholdKind(std::string_view s);

struct Household {
  int id = 0;
  HouseholdKind kind = HouseholdKind::kFamily;
  PlaceId home = kNoPlace;
  // Only co-parenting households link a second home.
  PlaceId second_home = kNoPlace;
  std::vector<AgentId> members;

  bool operator==(const Household&) const = default;
};

// Places whose wages the government funds through public service spending.
inline bool IsPublicEmployer(PlaceKind k) {
  return k == PlaceKind::kSchool || k == PlaceKind::kHospital || k == PlaceKind::kWorkplace;
}

inline bool IsShop(PlaceKind k) {
  return k == PlaceKind::kEssentialShop || k == PlaceKind::kNonessentialShop ||
         k == PlaceKind::kLeisure;
}

}  // namespace needsim

#endif  // NEEDSIM_MODEL_H_
