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

#ifndef NEEDSIM_RNG_H_
#define NEEDSIM_RNG_H_

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace needsim {

// Each concern draws from its own stream so that adding draws in one place
// does not shift the sequence seen by another.
enum class Stream : std::uint64_t {
  kPopulation = 1,
  kEpidemic = 2,
  kBehavior = 3,
  kTesting = 4,
};

// Thin wrapper over mt19937_64. Only the engine's raw output is used; the
// conversions below are written out so results do not depend on the
// standard library's distribution implementations.
class Rng {
 public:
  Rng() : Rng(0, Stream::kPopulation) {}
  Rng(std::uint64_t seed, Stream stream);

  std::uint64_t NextU64() { return engine_(); }

  // Uniform in [0, 1) with 53 bits of precision.
  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  bool Bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return Uniform() < p;
  }

  // Uniform integer in [lo, hi], inclusive. Requires lo <= hi.
  std::int64_t UniformInt(std::int64_t lo, std::int64_t hi);

  // Index drawn proportionally to non-negative weights.
  std::size_t Discrete(std::span<const double> weights);

  template <typename T>
  void Shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      auto j = static_cast<std::size_t>(UniformInt(0, static_cast<std::int64_t>(i) - 1));
      std::swap(v[i - 1], v[j]);
    }
  }

  bool operator==(const Rng& other) const { return engine_ == other.engine_; }

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer; used to derive stream seeds.
std::uint64_t MixSeed(std::uint64_t x);

}  // namespace needsim

#endif  // NEEDSIM_RNG_H_
