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

#include <cmath>
#include <algorithm>
#include <bit>
#include <map>
#include <vector>

#include <gtest/gtest.h>

#include "cdplab/bit_vector.h"
#include "cdplab/distribution.h"
#include "cdplab/privacy.h"
#include "cdplab/random.h"
#include "cdplab/randomized_response.h"
#include "test_util.h"

namespace cdplab {
namespace {

using testing::B;
using testing::ExpectError;

TEST(HammingDistance, Examples) {
  EXPECT_EQ(HammingDistance(B("000"), B("000")), 0);
  EXPECT_EQ(HammingDistance(B("101"), B("010")), 3);
  EXPECT_EQ(HammingDistance(B("1100"), B("1010")), 2);
  ExpectError(ErrorCode::kDimension, [] { HammingDistance(B("10"), B("100")); });
}

TEST(HammingDistance, MetricAxiomsExhaustive) {
  const int n = 4;
  for (std::uint64_t a = 0; a < 16; ++a) {
    for (std::uint64_t b = 0; b < 16; ++b) {
      const BitVector x = BitVector::FromIndex(n, a), y = BitVector::FromIndex(n, b);
      EXPECT_EQ(HammingDistance(x, y), HammingDistance(y, x));
      for (std::uint64_t c = 0; c < 16; ++c) {
        const BitVector z = BitVector::FromIndex(n, c);
        EXPECT_LE(HammingDistance(x, z), HammingDistance(x, y) + HammingDistance(y, z));
      }
    }
  }
}

TEST(BitVector, IndexOrderIsMostSignificantFirst) {
  EXPECT_EQ(B("011").ToIndex(), 3u);
  EXPECT_EQ(BitVector::FromIndex(3, 5).ToString(), "101");
  EXPECT_LT(B("011"), B("101"));
  ExpectError(ErrorCode::kDimension, [] { BitVector::FromString(""); });
}

TEST(RandomizedResponse, RetainProbabilityClosedForms) {
  EXPECT_DOUBLE_EQ(RetainProbability(0.0), 0.5);
  EXPECT_NEAR(RetainProbability(std::log(3.0)), 0.75, 1e-15);
  ExpectError(ErrorCode::kParameter, [] { RetainProbability(-0.1); });
  RandomStream rng(1);
  ExpectError(ErrorCode::kParameter, [&] { RandomizedResponse(B("01"), -1.0, rng); });
}

TEST(ExactRrDistribution, OneBitAtEpsilonOne) {
  const double e = std::exp(1.0);
  const auto dist = ExactRrDistribution(B("1"), 1.0);
  EXPECT_NEAR(dist.Mass(1), e / (1 + e), 1e-15);
  EXPECT_NEAR(dist.Mass(0), 1 / (1 + e), 1e-15);
}

TEST(ExactRrDistribution, TwoBitsKeepBoth) {
  const double e = std::exp(1.0);
  const auto dist = ExactRrDistribution(B("10"), 1.0);
  EXPECT_NEAR(dist.Mass(B("10").ToIndex()), (e / (1 + e)) * (e / (1 + e)), 1e-15);
}

TEST(ExactRrDistribution, LimitCases) {
  EXPECT_GE(ExactRrDistribution(B("0110"), 50.0).Mass(B("0110").ToIndex()), 1 - 1e-9);
  const auto uniform = ExactRrDistribution(B("0110"), 0.0);
  for (const auto& [o, p] : uniform.masses()) {
    EXPECT_DOUBLE_EQ(p, 1.0 / 16) << o;
  }
  Guards small;
  small.max_enumeration_n = 3;
  ExpectError(ErrorCode::kCapacity, [&] { ExactRrDistribution(B("0110"), 1.0, small); });
}

TEST(ExactRrDistribution, RationalMassSumsToExactlyOne) {
  const Rational e = RationalExp(1.0);
  const auto dist = ExactRrDistributionRational(B("10110"), e);
  Rational total = 0;
  for (const auto& [o, p] : dist.masses()) total += p;
  EXPECT_EQ(total, Rational(1));
}

TEST(ExactRrDistribution, MatchesEmpiricalFrequencies) {
  // Per-outcome oracle: p^{n-d} (1-p)^d, checked within three standard errors.
  RandomStream rng(20261015);
  for (int n = 1; n <= 4; ++n) {
    const BitVector x = BitVector::FromIndex(n, (std::uint64_t{1} << n) - 2);
    const double eps = 0.7;
    const double p = std::exp(eps) / (1 + std::exp(eps));
    const int trials = 100000;
    std::map<std::uint64_t, int> counts;
    for (int t = 0; t < trials; ++t) ++counts[RandomizedResponse(x, eps, rng).ToIndex()];
    const auto exact = ExactRrDistribution(x, eps);
    for (std::uint64_t z = 0; z < (std::uint64_t{1} << n); ++z) {
      const int d = std::popcount(z ^ x.ToIndex());
      const double oracle = std::pow(p, n - d) * std::pow(1 - p, d);
      EXPECT_NEAR(exact.Mass(z), oracle, 1e-15);
      const double se = std::sqrt(oracle * (1 - oracle) / trials);
      EXPECT_NEAR(counts[z] / double(trials), oracle, 3 * se) << "n=" << n << " z=" << z;
    }
  }
}

TEST(LaplaceNoise, MedianTailAndMeanAbsolute) {
  RandomStream rng(7);
  const int samples = 1000000;
  std::vector<double> draws(samples);
  int tail = 0;
  for (double& z : draws) {
    z = LaplaceNoise(1.0, rng);
    tail += std::abs(z) > 2.0;
  }
  std::nth_element(draws.begin(), draws.begin() + samples / 2, draws.end());
  EXPECT_NEAR(draws[samples / 2], 0.0, 0.01);
  EXPECT_NEAR(tail / double(samples), std::exp(-2.0), 0.005);
  double abs_sum = 0;
  for (int i = 0; i < samples; ++i) abs_sum += std::abs(LaplaceNoise(2.0, rng));
  EXPECT_NEAR(abs_sum / samples, 2.0, 0.02);
  ExpectError(ErrorCode::kParameter, [&] { LaplaceNoise(0.0, rng); });
}

TEST(HockeyStick, IdenticalAndDisjoint) {
  const auto p = ExactRrDistribution(B("0101"), 0.8);
  EXPECT_EQ(HockeyStickAt(p, p, 0.0), 0.0);
  const std::vector<std::uint64_t> space = {0, 1, 2};
  const auto a = FiniteDistribution<double>::PointMass(0, space);
  const auto b = FiniteDistribution<double>::PointMass(2, space);
  EXPECT_DOUBLE_EQ(HockeyStickAt(a, b, 0.0), 1.0);
  const auto other = FiniteDistribution<double>::PointMass(0, {0, 1});
  ExpectError(ErrorCode::kDomain, [&] { HockeyStickAt(a, other, 1.0); });
}

TEST(HockeyStick, RandomizedResponseIsExactlyEpsilon) {
  for (double eps : {0.25, 1.0, 2.0}) {
    for (std::uint64_t xi = 0; xi < 8; ++xi) {
      const BitVector x = BitVector::FromIndex(3, xi);
      for (int i = 0; i < 3; ++i) {
        const auto p = ExactRrDistribution(x, eps);
        const auto q = ExactRrDistribution(x.WithFlipped(i), eps);
        EXPECT_NEAR(HockeyStickAt(p, q, eps), 0.0, 1e-12);
        EXPECT_GT(HockeyStickAt(p, q, 0.9 * eps), 1e-6);
        const Rational e = RationalExp(eps);
        EXPECT_EQ(HockeyStickExact(ExactRrDistributionRational(x, e),
                                   ExactRrDistributionRational(x.WithFlipped(i), e), e),
                  Rational(0));
      }
    }
  }
}

TEST(HockeyStick, MonotoneInEpsilon) {
  const auto p = ExactRrDistribution(B("00000"), 1.3);
  const auto q = ExactRrDistribution(B("00011"), 1.3);
  double previous = 1.0;
  for (double eps = 0.0; eps <= 4.0; eps += 0.05) {
    const double delta = HockeyStickAt(p, q, eps);
    EXPECT_LE(delta, previous + 1e-15);
    previous = delta;
  }
}

TEST(GroupPrivacy, Examples) {
  const PrivacyParams base(1.0, 0.1);
  EXPECT_EQ(GroupPrivacy(base, 1), base);
  const PrivacyParams two = GroupPrivacy(base, 2);
  EXPECT_DOUBLE_EQ(two.epsilon(), 2.0);
  const double e = std::exp(1.0);
  EXPECT_NEAR(two.delta(), (e * e - 1) / (e - 1) * 0.1, 1e-15);
  EXPECT_EQ(GroupPrivacy(PrivacyParams(0.7, 0.0), 5), PrivacyParams(3.5, 0.0));
  EXPECT_DOUBLE_EQ(GroupPrivacy(PrivacyParams(0.0, 0.01), 4).delta(), 0.04);
  ExpectError(ErrorCode::kParameter, [] { GroupPrivacy(PrivacyParams(1, 0), 0); });
}

TEST(GroupPrivacy, PureCaseComposesMultiplicatively) {
  const PrivacyParams base(0.3, 0.0);
  for (int t1 = 1; t1 <= 4; ++t1) {
    for (int t2 = 1; t2 <= 4; ++t2) {
      const PrivacyParams nested = GroupPrivacy(GroupPrivacy(base, t1), t2);
      const PrivacyParams direct = GroupPrivacy(base, t1 * t2);
      EXPECT_NEAR(nested.epsilon(), direct.epsilon(), 1e-12);
      EXPECT_EQ(nested.delta(), 0.0);
    }
  }
}

TEST(Compose, SumsAndClamps) {
  EXPECT_EQ(Compose(PrivacyParams(1, 0), PrivacyParams(1, 0)), PrivacyParams(2, 0));
  EXPECT_EQ(Compose(PrivacyParams(0, 0), PrivacyParams(0.4, 0.2)), PrivacyParams(0.4, 0.2));
  EXPECT_EQ(Compose(PrivacyParams(1, 0.6), PrivacyParams(1, 0.6)), PrivacyParams(2, 1.0));
  ExpectError(ErrorCode::kParameter, [] { PrivacyParams(-1, 0); });
  ExpectError(ErrorCode::kParameter, [] { PrivacyParams(1, 1.5); });
}

TEST(RandomStream, DerivationIsLabelDeterministic) {
  RandomStream a(5), b(5);
  a();
  EXPECT_EQ(a.Derive("x").seed(), b.Derive("x").seed());
  EXPECT_NE(a.Derive("x").seed(), a.Derive("y").seed());
  RandomStream c = a.Derive("x"), d = b.Derive("x");
  EXPECT_EQ(c(), d());
}

}  // namespace
}  // namespace cdplab
