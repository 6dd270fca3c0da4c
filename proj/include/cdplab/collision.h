// Copyright 2026 The cdplab Authors
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

#ifndef CDPLAB_COLLISION_H_
#define CDPLAB_COLLISION_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "cdplab/bit_vector.h"
#include "cdplab/hashing.h"
#include "cdplab/obfuscation.h"
#include "cdplab/random.h"

namespace cdplab {

// A differing-inputs adversary: sees one sampler output (including its public
// coin) and may return a candidate y with c0(y) != c1(y).
using DifferingInputFinder =
    std::function<std::optional<BitVector>(const SamplerOutput&, RandomStream&)>;

// Exhaustive search returning the lexicographically first differing input.
inline DifferingInputFinder LexFirstFinder(const Guards& guards = DefaultGuards()) {
  return [guards](const SamplerOutput& s, RandomStream&) {
    return FindDifferingInput(s.c0, s.c1, s.c0.dimension(), guards);
  };
}

// Exhaustive search returning a uniformly random differing input.
inline DifferingInputFinder UniformFinder(const Guards& guards = DefaultGuards()) {
  return [guards](const SamplerOutput& s,
                  RandomStream& rng) -> std::optional<BitVector> {
    auto all = AllDifferingInputs(s.c0, s.c1, s.c0.dimension(), guards);
    if (all.empty()) return std::nullopt;
    return all[UniformBelow(rng, all.size())];
  };
}

// Points of R on which the sampler's circuits at (x, x') can differ: R
// intersected with the symmetric difference of the two radius-r balls.
inline std::size_t SeparatingPoints(const std::vector<BitVector>& region, const BitVector& x,
                                    const BitVector& x_prime, int r) {
  std::size_t count = 0;
  for (const BitVector& y : region) {
    count += (HammingDistance(x, y) <= r) != (HammingDistance(x_prime, y) <= r);
  }
  return count;
}

// Adjacent pair (x in R, flipped coordinate) with the most separating points.
// Ties go to the earlier x in `region`, then the lower coordinate.
inline std::pair<BitVector, int> RichestAdjacentPair(const std::vector<BitVector>& region,
                                                     int r) {
  if (region.empty()) throw Error(ErrorCode::kParameter, "R must be nonempty");
  std::pair<BitVector, int> best{region.front(), 0};
  std::size_t best_count = 0;
  bool first = true;
  for (const BitVector& x : region) {
    for (int i = 0; i < x.size(); ++i) {
      const std::size_t c = SeparatingPoints(region, x, x.WithFlipped(i), r);
      if (first || c > best_count) {
        best = {x, i};
        best_count = c;
        first = false;
      }
    }
  }
  return best;
}

struct CollisionHarvest {
  int target = 0;
  std::uint64_t budget = 0;
  std::vector<BitVector> found;
  bool succeeded = false;
  std::uint64_t iterations_used = 0;
  // Every verified differing input, including repeats of earlier ones.
  std::uint64_t hits = 0;

  Json ToJson() const {
    Json j;
    j["K"] = target;
    j["budget"] = budget;
    Json hex = Json::array();
    for (const BitVector& y : found) hex.push_back(y.ToHex());
    j["found"] = std::move(hex);
    j["succeeded"] = succeeded;
    j["iterations_used"] = iterations_used;
    j["hits"] = hits;
    return j;
  }
};

// Repeatedly samples theta, asks the finder for a differing input and keeps
// the verified ones. Only distinct inputs count toward the target K; running
// out of budget returns succeeded=false with the partial harvest.
inline CollisionHarvest CollisionAdversary(const LdsParams& params,
                                           const DifferingInputFinder& finder,
                                           int target, std::uint64_t budget,
                                           RandomStream& rng) {
  if (target < 0) throw Error(ErrorCode::kParameter, "K must be >= 0");
  if (budget < static_cast<std::uint64_t>(target)) {
    throw Error(ErrorCode::kParameter, "iteration budget must be >= K");
  }
  CollisionHarvest harvest;
  harvest.target = target;
  harvest.budget = budget;
  std::unordered_set<BitVector> seen;
  while (static_cast<int>(harvest.found.size()) < target &&
         harvest.iterations_used < budget) {
    ++harvest.iterations_used;
    const SamplerOutput sample = LdsSampler(params, rng);
    const std::optional<BitVector> y = finder(sample, rng);
    if (!y || sample.c0.Evaluate(*y) == sample.c1.Evaluate(*y)) continue;
    ++harvest.hits;
    if (seen.insert(*y).second) harvest.found.push_back(*y);
  }
  harvest.succeeded = static_cast<int>(harvest.found.size()) >= target;
  return harvest;
}

}  // namespace cdplab

#endif  // CDPLAB_COLLISION_H_
