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

#ifndef CDPLAB_LOWER_BOUNDS_H_
#define CDPLAB_LOWER_BOUNDS_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cdplab/bit_vector.h"
#include "cdplab/circuits.h"
#include "cdplab/distribution.h"
#include "cdplab/errors.h"
#include "cdplab/graph.h"
#include "cdplab/mechanisms.h"
#include "cdplab/privacy.h"
#include "cdplab/random.h"
#include "cdplab/randomized_response.h"
#include "cdplab/report.h"

namespace cdplab {

// A map {0,1}^n -> {0,1}^n under analysis. Either route may be missing: the
// exact output distribution (outcomes are point indices) or a sampler.
struct AnalyzedMechanism {
  std::string name;
  int n = 0;
  std::function<FiniteDistribution<double>(const BitVector&)> distribution;
  std::function<BitVector(const BitVector&, RandomStream&)> sampler;
  std::optional<PrivacyParams> declared;  // nullopt: not claimed to be private
  bool transparent = true;
};

inline AnalyzedMechanism RandomizedResponseMechanism(int n, double epsilon) {
  AnalyzedMechanism m;
  m.name = "randomized-response";
  m.n = n;
  m.distribution = [epsilon](const BitVector& x) { return ExactRrDistribution(x, epsilon); };
  m.sampler = [epsilon](const BitVector& x, RandomStream& rng) {
    return RandomizedResponse(x, epsilon, rng);
  };
  m.declared = PrivacyParams(epsilon, 0.0);
  return m;
}

inline AnalyzedMechanism IdentityMechanism(int n) {
  AnalyzedMechanism m;
  m.name = "identity";
  m.n = n;
  m.distribution = [n](const BitVector& x) {
    std::vector<std::uint64_t> space;
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) space.push_back(i);
    return FiniteDistribution<double>::PointMass(x.ToIndex(), space);
  };
  m.sampler = [](const BitVector& x, RandomStream&) { return x; };
  return m;
}

struct BlockScheme {
  int n = 0;
  int block_size = 0;   // n'
  int block_count = 0;  // b'

  void Validate() const {
    if (block_size < 1 || block_count < 1 || block_size * block_count != n) {
      throw Error(ErrorCode::kParameter, "block scheme needs n = n' * b'");
    }
  }

  // Zero-based coordinates of block i (0 <= i < b').
  std::vector<int> Block(int i) const {
    std::vector<int> coords(block_size);
    for (int k = 0; k < block_size; ++k) coords[k] = i * block_size + k;
    return coords;
  }
};

// (eps', delta') = ((2d+1) eps, (e^{eps'}-1)/(e^eps-1) delta), delta' uncapped.
inline std::pair<double, double> DistanceGroupParams(double epsilon, double delta, int d) {
  const int t = 2 * d + 1;
  return {t * epsilon, GroupDeltaFactor(epsilon, t) * delta};
}

inline double BinomialBallFraction(int n, int d) {
  return std::ldexp(1.0, n) / static_cast<double>(BallSize(n, std::min(d, n)));
}

// 0.5 e^{-eps'} (1 - delta') (|R| - 2^n / binom(n, <= d)).
inline double EachBlockBound(double epsilon, double delta, int d, int n,
                             std::uint64_t r_size) {
  if (n < 1 || d < 0 || epsilon < 0 || delta < 0) {
    throw Error(ErrorCode::kParameter, "each_block_bound parameters out of range");
  }
  const auto [eps_prime, delta_prime] = DistanceGroupParams(epsilon, delta, d);
  return 0.5 * std::exp(-eps_prime) * (1.0 - delta_prime) *
         (static_cast<double>(r_size) - BinomialBallFraction(n, d));
}

// 0.5 e^{-eps'} (1 - delta') (1 - 2^n / (|R| binom(n', <= d))) - zeta.
inline double BlockDecompositionBound(double epsilon, double delta, int d,
                                      const BlockScheme& scheme, std::uint64_t r_size,
                                      double zeta) {
  scheme.Validate();
  const auto [eps_prime, delta_prime] = DistanceGroupParams(epsilon, delta, d);
  const double density =
      std::ldexp(1.0, scheme.n) /
      (static_cast<double>(r_size) *
       static_cast<double>(BallSize(scheme.block_size, std::min(d, scheme.block_size))));
  return 0.5 * std::exp(-eps_prime) * (1.0 - delta_prime) * (1.0 - density) - zeta;
}

namespace internal {

inline std::vector<BitVector> EnumerateSet(int n, const MembershipPredicate& in_r,
                                           const Guards& guards) {
  CheckEnumerable(n, guards, "set enumeration");
  std::vector<BitVector> out;
  ForEachPoint(n, [&](const BitVector& x) {
    if (in_r(x)) out.push_back(x);
  });
  return out;
}

inline bool LabelCovers(const AnalyzedMechanism& m, double epsilon, double delta) {
  return m.declared && m.declared->epsilon() <= epsilon + 1e-12 &&
         m.declared->delta() <= delta + 1e-12;
}

// Pr[M(x) far from x] where far(y) decides failure, computed exactly.
inline double ExactFailure(const AnalyzedMechanism& m, const BitVector& x,
                           const std::function<bool(const BitVector&)>& far) {
  double total = 0.0;
  const FiniteDistribution<double> dist = m.distribution(x);
  for (const auto& [outcome, mass] : dist.masses()) {
    if (mass > 0.0 && far(BitVector::FromIndex(m.n, outcome))) total += mass;
  }
  return total;
}

}  // namespace internal

inline constexpr double kExactTolerance = 1e-9;

// Checks sum_{x in R} Pr[M(x) != x] >= EachBlockBound(...). Exact when M
// exposes its distribution and n <= 12, Monte-Carlo (3-sigma Wilson interval
// on the pooled failure rate) otherwise.
inline ClaimReport VerifyEachBlock(const AnalyzedMechanism& m,
                                   const MembershipPredicate& in_r, double epsilon,
                                   double delta, int d, std::uint64_t trials,
                                   std::uint64_t seed,
                                   const Guards& guards = DefaultGuards()) {
  ClaimReport report;
  report.claim = "each-block";
  report.seed = seed;
  report.details["mechanism"] = m.name;
  report.details["n"] = m.n;
  report.details["epsilon"] = epsilon;
  report.details["delta"] = delta;
  report.details["d"] = d;
  const std::vector<BitVector> set = internal::EnumerateSet(m.n, in_r, guards);
  report.details["R_size"] = set.size();
  report.rhs = EachBlockBound(epsilon, delta, d, m.n, set.size());
  report.vacuous = report.rhs <= 0.0;
  if (!internal::LabelCovers(m, epsilon, delta)) {
    report.status = ClaimStatus::kNotApplicable;
    report.details["reason"] = "mechanism carries no matching DP label";
    return report;
  }
  if (m.distribution && m.n <= 12) {
    report.exact = true;
    double lhs = 0.0;
    for (const BitVector& x : set) {
      lhs += internal::ExactFailure(m, x, [&](const BitVector& y) { return y != x; });
    }
    report.lhs = lhs;
    report.status = lhs >= report.rhs - kExactTolerance ? ClaimStatus::kPass
                                                        : ClaimStatus::kViolation;
    return report;
  }
  if (!m.sampler) {
    throw Error(ErrorCode::kUnsupportedAudit, "mechanism exposes neither route");
  }
  report.exact = false;
  report.trials = trials;
  RandomStream rng(seed);
  std::uint64_t failures = 0;
  for (std::uint64_t t = 0; t < trials && !set.empty(); ++t) {
    const BitVector& x = set[UniformBelow(rng, set.size())];
    failures += m.sampler(x, rng) != x;
  }
  const double scale = static_cast<double>(set.size());
  const auto [low, high] = WilsonInterval(failures, trials);
  report.lhs = trials ? scale * failures / static_cast<double>(trials) : 0.0;
  report.details["lhs_interval"] = Json::array({scale * low, scale * high});
  if (scale * low >= report.rhs) {
    report.status = ClaimStatus::kPass;
  } else if (scale * high < report.rhs) {
    report.status = ClaimStatus::kViolation;
  } else {
    report.status = ClaimStatus::kInconclusive;
  }
  return report;
}

// Checks that some x in R has Pr[||M(x) - x||_1 > zeta * b'] at least the
// block-decomposition bound, exhibiting the maximizing x.
inline ClaimReport VerifyBlockDecomposition(const AnalyzedMechanism& m,
                                            const MembershipPredicate& in_r,
                                            const BlockScheme& scheme, double epsilon,
                                            double delta, int d, double zeta,
                                            std::uint64_t trials, std::uint64_t seed,
                                            const Guards& guards = DefaultGuards()) {
  scheme.Validate();
  if (scheme.n != m.n) throw Error(ErrorCode::kDimension, "scheme n differs from mechanism");
  ClaimReport report;
  report.claim = "block-decomposition";
  report.seed = seed;
  report.details["mechanism"] = m.name;
  report.details["n"] = m.n;
  report.details["block_size"] = scheme.block_size;
  report.details["block_count"] = scheme.block_count;
  report.details["epsilon"] = epsilon;
  report.details["delta"] = delta;
  report.details["d"] = d;
  report.details["block_fraction"] = zeta;
  const std::vector<BitVector> set = internal::EnumerateSet(m.n, in_r, guards);
  report.details["R_size"] = set.size();
  if (set.empty()) throw Error(ErrorCode::kParameter, "R must be nonempty");
  report.rhs = BlockDecompositionBound(epsilon, delta, d, scheme, set.size(), zeta);
  report.vacuous = report.rhs <= 0.0;
  if (!internal::LabelCovers(m, epsilon, delta)) {
    report.status = ClaimStatus::kNotApplicable;
    report.details["reason"] = "mechanism carries no matching DP label";
    return report;
  }
  const double threshold = zeta * scheme.block_count;
  report.details["distance_threshold"] = threshold;
  if (m.distribution && m.n <= 12) {
    report.exact = true;
    double best = -1.0;
    const BitVector* argmax = nullptr;
    for (const BitVector& x : set) {
      const double p = internal::ExactFailure(
          m, x, [&](const BitVector& y) { return HammingDistance(x, y) > threshold; });
      if (p > best) {
        best = p;
        argmax = &x;
      }
    }
    report.lhs = best;
    report.details["witness_x"] = argmax->ToString();
    report.status = best >= report.rhs - kExactTolerance ? ClaimStatus::kPass
                                                         : ClaimStatus::kViolation;
    return report;
  }
  if (!m.sampler) {
    throw Error(ErrorCode::kUnsupportedAudit, "mechanism exposes neither route");
  }
  report.exact = false;
  report.trials = trials;
  RandomStream rng(seed);
  const std::uint64_t per_point = std::max<std::uint64_t>(1, trials / set.size());
  double best_low = -1.0, best_high = -1.0, best = -1.0;
  std::string witness;
  for (const BitVector& x : set) {
    std::uint64_t failures = 0;
    for (std::uint64_t t = 0; t < per_point; ++t) {
      failures += HammingDistance(m.sampler(x, rng), x) > threshold;
    }
    const auto [low, high] = WilsonInterval(failures, per_point);
    best_high = std::max(best_high, high);
    if (low > best_low) {
      best_low = low;
      best = failures / static_cast<double>(per_point);
      witness = x.ToString();
    }
  }
  report.lhs = best;
  report.details["witness_x"] = witness;
  report.details["per_point_trials"] = per_point;
  if (best_low >= report.rhs) {
    report.status = ClaimStatus::kPass;
  } else if (best_high < report.rhs) {
    report.status = ClaimStatus::kViolation;
  } else {
    report.status = ClaimStatus::kInconclusive;
  }
  return report;
}

// Packing bound: inds(H^{2d+1}) <= 2^n / binom(n, <= d). Computes the exact
// independence number when the graph fits the solver guard, otherwise decides
// exactly whether any independent set beats floor(bound).
inline ClaimReport VerifyPackingBound(int n, int d, const Guards& guards = DefaultGuards()) {
  ClaimReport report;
  report.claim = "packing-bound";
  report.details["n"] = n;
  report.details["d"] = d;
  report.rhs = BinomialBallFraction(n, d);
  const Graph g = HypercubeGraph(n, 2 * d + 1, {}, guards);
  const int floor_bound = static_cast<int>(std::floor(report.rhs + 1e-9));
  if (g.vertex_count() <= guards.max_independent_set_vertices) {
    report.lhs = MaxIndependentSet(g, guards);
    report.details["method"] = "exact-maximum";
    report.status = report.lhs <= report.rhs + kExactTolerance ? ClaimStatus::kPass
                                                               : ClaimStatus::kViolation;
  } else {
    const bool exceeds = IndependenceNumberExceeds(g, floor_bound);
    report.lhs = floor_bound;
    report.details["method"] = "exact-decision";
    report.details["independence_exceeds_floor_bound"] = exceeds;
    report.status = exceeds ? ClaimStatus::kViolation : ClaimStatus::kPass;
  }
  return report;
}

// Matching bound on random induced subgraphs of H^d: every graph must have a
// maximum matching of size >= ceil((|V| - inds)/2). Subgraph sizes stay within
// the independent-set guard.
inline ClaimReport VerifyMatchingBound(int n, int d, int samples, std::uint64_t seed,
                                       const Guards& guards = DefaultGuards()) {
  ClaimReport report;
  report.claim = "matching-bound";
  report.seed = seed;
  report.trials = static_cast<std::uint64_t>(samples);
  report.details["n"] = n;
  report.details["d"] = d;
  const Graph full = HypercubeGraph(n, d, {}, guards);
  RandomStream rng(seed);
  const std::size_t cap = std::min(full.vertex_count(), guards.max_independent_set_vertices);
  int violations = 0;
  double worst_slack = 1e300;
  for (int s = 0; s < samples; ++s) {
    std::vector<int> all(full.vertex_count());
    std::iota(all.begin(), all.end(), 0);
    const std::size_t size = 1 + UniformBelow(rng, cap);
    for (std::size_t i = 0; i < size; ++i) {
      std::swap(all[i], all[i + UniformBelow(rng, all.size() - i)]);
    }
    all.resize(size);
    std::sort(all.begin(), all.end());
    const Graph sub = full.InducedSubgraph(all);
    const double matching = static_cast<double>(MaxMatching(sub, guards));
    const int inds = MaxIndependentSet(sub, guards);
    const double needed =
        std::ceil((static_cast<double>(sub.vertex_count()) - inds) / 2.0);
    worst_slack = std::min(worst_slack, matching - needed);
    if (matching < needed) ++violations;
  }
  report.lhs = worst_slack;
  report.rhs = 0.0;
  report.details["violations"] = violations;
  report.status = violations == 0 ? ClaimStatus::kPass : ClaimStatus::kViolation;
  return report;
}

}  // namespace cdplab

#endif  // CDPLAB_LOWER_BOUNDS_H_
