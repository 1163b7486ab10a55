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

#ifndef NEEDSIM_CLOCK_H_
#define NEEDSIM_CLOCK_H_

#include <cassert>
#include <cstdint>

#include "needsim/types.h"

namespace needsim {

enum class Segment : std::uint8_t { kMorning, kAfternoon, kEvening, kNight };

class Clock {
 public:
  explicit Clock(int ticks_per_day = 4) : ticks_per_day_(ticks_per_day) {
    assert(ticks_per_day > 0);
  }

  Tick tick() const { return tick_; }
  int ticks_per_day() const { return ticks_per_day_; }
  std::int64_t day_index() const { return tick_ / ticks_per_day_; }
  int segment_index() const { return static_cast<int>(tick_ % ticks_per_day_); }

  // With non-default day lengths, segments past the fourth count as night.
  Segment segment() const {
    const int s = segment_index();
    return s >= 3 ? Segment::kNight : static_cast<Segment>(s);
  }

  bool is_weekend() const {
    const auto d = day_index() % 7;
    return d == 5 || d == 6;
  }
  std::int64_t week_index() const { return day_index() / 7; }
  bool is_day_start() const { return segment_index() == 0; }

  void Advance() { ++tick_; }
  void Set(Tick t) { tick_ = t; }

  bool operator==(const Clock&) const = default;

 private:
  Tick tick_ = 0;
  int ticks_per_day_;
};

}  // namespace needsim

#endif  // NEEDSIM_CLOCK_H_
