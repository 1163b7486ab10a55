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

#ifndef NEEDSIM_TYPES_H_
#define NEEDSIM_TYPES_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace needsim {

using AgentId = std::int32_t;
using PlaceId = std::int32_t;
using Tick = std::int64_t;

// Money is kept in integer minor units so that every transfer conserves the
// total exactly.
using Money = std::int64_t;

inline constexpr PlaceId kNoPlace = -1;

enum class AgeGroup : std::uint8_t { kChild, kStudent, kWorker, kRetiree };
inline constexpr std::size_t kNumAgeGroups = 4;

enum class PlaceKind : std::uint8_t {
  kHome,
  kEssentialShop,
  kNonessentialShop,
  kWorkplace,
  kSchool,
  kHospital,
  kLeisure,
  kStation,
};
inline constexpr std::size_t kNumPlaceKinds = 8;

// The declaration order is the deliberation tie-break order.
enum class ActivityKind : std::uint8_t {
  kRestAtHome,
  kStayHome,
  kWorkAtHome,
  kWorkAtOffice,
  kAttendSchool,
  kShopEssential,
  kShopNonessential,
  kLeisure,
  kVisitDoctor,
};
inline constexpr std::size_t kNumActivityKinds = 9;

enum class Compartment : std::uint8_t { kS, kE, kI1, kI2, kO1, kO2, kR, kDead };
inline constexpr std::size_t kNumCompartments = 8;

template <typename E>
constexpr std::size_t Index(E e) {
  return static_cast<std::size_t>(e);
}

std::string_view ToString(AgeGroup g);
std::string_view ToString(PlaceKind k);
std::string_view ToString(ActivityKind k);
std::string_view ToString(Compartment c);

std::optional<AgeGroup> ParseAgeGroup(std::string_view s);
std::optional<PlaceKind> ParsePlaceKind(std::string_view s);
std::optional<ActivityKind> ParseActivityKind(std::string_view s);

inline constexpr std::array<AgeGroup, kNumAgeGroups> kAllAgeGroups = {
    AgeGroup::kChild, AgeGroup::kStudent, AgeGroup::kWorker,
    AgeGroup::kRetiree};

inline constexpr std::array<PlaceKind, kNumPlaceKinds> kAllPlaceKinds = {
    PlaceKind::kHome,     PlaceKind::kEssentialShop, PlaceKind::kNonessentialShop,
    PlaceKind::kWorkplace, PlaceKind::kSchool,       PlaceKind::kHospital,
    PlaceKind::kLeisure,  PlaceKind::kStation};

inline constexpr std::array<ActivityKind, kNumActivityKinds> kAllActivityKinds =
    {ActivityKind::kRestAtHome,       ActivityKind::kStayHome,
     ActivityKind::kWorkAtHome,       ActivityKind::kWorkAtOffice,
     ActivityKind::kAttendSchool,     ActivityKind::kShopEssential,
     ActivityKind::kShopNonessential, ActivityKind::kLeisure,
     ActivityKind::kVisitDoctor};

inline constexpr std::array<Compartment, kNumCompartments> kAllCompartments = {
    Compartment::kS,  Compartment::kE,  Compartment::kI1, Compartment::kI2,
    Compartment::kO1, Compartment::kO2, Compartment::kR,  Compartment::kDead};

inline bool IsInfectious(Compartment c) {
  return c == Compartment::kI1 || c == Compartment::kI2 ||
         c == Compartment::kO1 || c == Compartment::kO2;
}

// Exposed or infectious.
inline bool IsInfected(Compartment c) {
  return c == Compartment::kE || IsInfectious(c);
}

inline bool IsHomeActivity(ActivityKind k) {
  return k == ActivityKind::kRestAtHome || k == ActivityKind::kStayHome ||
         k == ActivityKind::kWorkAtHome;
}

inline bool IsAdult(AgeGroup g) {
  return g == AgeGroup::kWorker || g == AgeGroup::kRetiree;
}

}  // namespace needsim

#endif  // NEEDSIM_TYPES_H_
