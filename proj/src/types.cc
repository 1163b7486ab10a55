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

#include "needsim/types.h"

#include "needsim/model.h"

namespace needsim {
namespace {

constexpr std::array<std::string_view, kNumAgeGroups> kAgeGroupNames = {
    "child", "student", "worker", "retiree"};
constexpr std::array<std::string_view, kNumPlaceKinds> kPlaceKindNames = {
    "home",     "essential_shop", "nonessential_shop", "workplace",
    "school",   "hospital",       "leisure",           "station"};
constexpr std::array<std::string_view, kNumActivityKinds> kActivityNames = {
    "rest_at_home",   "stay_home",         "work_at_home",
    "work_at_office", "attend_school",     "shop_essential",
    "shop_nonessential", "leisure",        "visit_doctor"};
constexpr std::array<std::string_view, kNumCompartments> kCompartmentNames = {
    "S", "E", "I1", "I2", "O1", "O2", "R", "Dead"};
constexpr std::array<std::string_view, kNumHouseholdKinds> kHouseholdNames = {
    "family", "student_shared", "retirement_home", "three_generation",
    "co_parenting"};

template <typename E, std::size_t N>
std::optional<E> Lookup(const std::array<std::string_view, N>& names,
                        std::string_view s) {
  for (std::size_t i = 0; i < N; ++i) {
    if (names[i] == s) return static_cast<E>(i);
  }
  return std::nullopt;
}

}  // namespace

std::string_view ToString(AgeGroup g) { return kAgeGroupNames[Index(g)]; }
std::string_view ToString(PlaceKind k) { return kPlaceKindNames[Index(k)]; }
std::string_view ToString(ActivityKind k) { return kActivityNames[Index(k)]; }
std::string_view ToString(Compartment c) { return kCompartmentNames[Index(c)]; }

std::string_view ToString(HouseholdKind k) { return kHouseholdNames[Index(k)]; }

std::optional<HouseholdKind> ParseHouseholdKind(std::string_view s) {
  return Lookup<HouseholdKind>(kHouseholdNames, s);
}

std::optional<AgeGroup> ParseAgeGroup(std::string_view s) {
  return Lookup<AgeGroup>(kAgeGroupNames, s);
}
std::optional<PlaceKind> ParsePlaceKind(std::string_view s) {
  return Lookup<PlaceKind>(kPlaceKindNames, s);
}
std::optional<ActivityKind> ParseActivityKind(std::string_view s) {
  return Lookup<ActivityKind>(kActivityNames, s);
}

}  // namespace needsim
