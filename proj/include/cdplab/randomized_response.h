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

#ifndef CDPLAB_RANDOMIZED_RESPONSE_H_
#define CDPLAB_RANDOMIZED_RESPONSE_H_

#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cdplab/bit_vector.h"
#include "cdplab/distribution.h"
#include "cdplab/errors.h"
#include "cdplab/random.h"

namespace cdplab {

inline void CheckEpsilon(double epsilon) {
  if (!(epsilon >= 0.0) || std::isnan(epsilon)) {
    throw Error(ErrorCode::kParameter,
                "epsilon must be >= 0, got " + std::to_string(epsilon));
  }
}

// e^eps / (1 + e^eps), written to stay finite for large eps.
inline double RetainProbability(double epsilon) {
  CheckEpsilon(epsilon);
  return 1.0 / (1.0 + std::exp(-epsilon));
}

inline double FlipProbability(double epsilon) {
  CheckEpsilon(epsilon);
  return 1.0 / (1.0 + std::exp(epsilon));
}

// RR_eps: each bit kept with probability e^eps/(1+e^eps), flipped otherwise.
template <RandomBitStream G>
BitVector RandomizedResponse(const BitVector& x, double epsilon, G& g) {
  const double flip = FlipProbability(epsilon);
  BitVector out = x;
  for (int i = 0; i < x.size(); ++i) {
    if (Bernoulli(g, flip)) out.Set(i, x[i] == 0);
  }
  return out;
}

inline FiniteDistribution<double> ExactRrDistribution(
    const BitVector& x, double epsilon, const Guards& guards = DefaultGuards()) {
  CheckEnumerable(x.size(), guards, "exact randomized-response distribution");
  const int n = x.size();
  const double keep = RetainProbability(epsilon);
  const double flip = FlipProbability(epsilon);
  std::vector<double> by_distance(n + 1);
  for (int d = 0; d <= n; ++d) {
    by_distance[d] = std::pow(keep, n - d) * std::pow(flip, d);
  }
  const std::uint64_t origin = x.ToIndex();
  std::map<std::uint64_t, double> mass;
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t z = 0; z < count; ++z) {
    mass.emplace_hint(mass.end(), z, by_distance[std::popcount(z ^ origin)]);
  }
  return FiniteDistribution<double>(std::move(mass));
}

// Rational-mode variant: `exp_epsilon` is the declared rational stand-in for
// e^eps, so retention is exactly E/(1+E).
inline FiniteDistribution<Rational> ExactRrDistributionRational(
    const BitVector& x, const Rational& exp_epsilon,
    const Guards& guards = DefaultGuards()) {
  CheckEnumerable(x.size(), guards, "exact randomized-response distribution");
  if (exp_epsilon < 1) {
    throw Error(ErrorCode::kParameter, "e^epsilon stand-in must be >= 1");
  }
  const int n = x.size();
  const Rational keep = exp_epsilon / (1 + exp_epsilon);
  const Rational flip = 1 / (1 + exp_epsilon);
  std::vector<Rational> keep_pow(n + 1, Rational(1)), flip_pow(n + 1, Rational(1));
  for (int k = 1; k <= n; ++k) {
    keep_pow[k] = keep_pow[k - 1] * keep;
    flip_pow[k] = flip_pow[k - 1] * flip;
  }
  std::vector<Rational> by_distance(n + 1);
  for (int d = 0; d <= n; ++d) by_distance[d] = keep_pow[n - d] * flip_pow[d];
  const std::uint64_t origin = x.ToIndex();
  std::map<std::uint64_t, Rational> mass;
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t z = 0; z < count; ++z) {
    mass.emplace_hint(mass.end(), z, by_distance[std::popcount(z ^ origin)]);
  }
  return FiniteDistribution<Rational>(std::move(mass));
}

// Sample from Lap(b): density (1/2b) exp(-|z|/b).
template <RandomBitStream G>
double LaplaceNoise(double scale, G& g) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw Error(ErrorCode::kParameter,
                "Laplace scale must be positive, got " + std::to_string(scale));
  }
  const double magnitude = -std::log1p(-UniformDouble(g)) * scale;
  return (g() >> 63) ? -magnitude : magnitude;
}

}  // namespace cdplab

#endif  // CDPLAB_RANDOMIZED_RESPONSE_H_
