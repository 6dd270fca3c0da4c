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
#include <vector>

#include <gtest/gtest.h>

#include "cdplab/audit.h"
#include "cdplab/graph.h"
#include "cdplab/lower_bounds.h"
#include "test_util.h"

namespace cdplab {
namespace {

using testing::B;
using testing::ExpectError;

// Independence number by subset enumeration (|V| <= 20).
int BruteIndependence(const Graph& g) {
  const int k = static_cast<int>(g.vertex_count());
  int best = 0;
  for (std::uint32_t s = 0; s < (1u << k); ++s) {
    bool ok = true;
    for (int u = 0; u < k && ok; ++u) {
      if (!(s >> u & 1)) continue;
      for (int v : g.neighbors(u)) ok = ok && !(s >> v & 1);
    }
    if (ok) best = std::max(best, std::popcount(s));
  }
  return best;
}

// Maximum matching by recursion over the lowest unmatched vertex (|V| <= 16).
int BruteMatching(const Graph& g, std::uint32_t used = 0) {
  const int k = static_cast<int>(g.vertex_count());
  int u = 0;
  while (u < k && (used >> u & 1)) ++u;
  if (u == k) return 0;
  int best = BruteMatching(g, used | 1u << u);
  for (int v : g.neighbors(u)) {
    if (!(used >> v & 1)) best = std::max(best, 1 + BruteMatching(g, used | 1u << u | 1u << v));
  }
  return best;
}

Graph Complete(int k) {
  std::vector<BitVector> vs;
  for (int i = 0; i < k; ++i) vs.push_back(BitVector::FromIndex(4, i));
  Graph g(vs);
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) g.AddEdge(i, j);
  }
  return g;
}

const auto kEveryone = [](const BitVector&) { return true; };

TEST(Graphs, HypercubeExamples) {
  EXPECT_EQ(HypercubeGraph(3, 1).edge_count(), 12u);
  EXPECT_EQ(HypercubeGraph(3, 3).edge_count(), 28u);
  EXPECT_EQ(HypercubeGraph(3, 0).edge_count(), 0u);
  EXPECT_EQ(HypercubeGraph(4, 2).edge_count(), 16u * (4 + 6) / 2);
  const Graph even = HypercubeGraph(4, 1, [](const BitVector& z) { return z.Weight() % 2 == 0; });
  EXPECT_EQ(even.vertex_count(), 8u);
  EXPECT_EQ(even.edge_count(), 0u);
  ExpectError(ErrorCode::kCapacity, [] { HypercubeGraph(30, 1); });
}

TEST(Graphs, IndependenceAndMatchingExamples) {
  EXPECT_EQ(MaxIndependentSet(Complete(7)), 1);
  EXPECT_EQ(MaxIndependentSet(HypercubeGraph(3, 0)), 8);
  EXPECT_EQ(MaxIndependentSet(HypercubeGraph(4, 3)), 2);
  EXPECT_EQ(MaxIndependentSet(HypercubeGraph(6, 3)), 4);
  Guards wide;
  wide.max_independent_set_vertices = 128;
  EXPECT_EQ(MaxIndependentSet(HypercubeGraph(7, 3), wide), 8);
  ExpectError(ErrorCode::kCapacity, [] { MaxIndependentSet(HypercubeGraph(7, 3)); });

  Graph path({B("00"), B("01"), B("11")});
  path.AddEdge(0, 1);
  path.AddEdge(1, 2);
  EXPECT_EQ(MaxMatching(path), 1u);
  EXPECT_EQ(MaxMatching(Complete(7)), 3u);
  EXPECT_EQ(MaxMatching(HypercubeGraph(4, 1)), 8u);
  EXPECT_TRUE(IndependenceNumberExceeds(HypercubeGraph(4, 3), 1));
  EXPECT_FALSE(IndependenceNumberExceeds(HypercubeGraph(4, 3), 2));
}

TEST(Graphs, SolversAgreeWithBruteForceOnRandomSubgraphs) {
  RandomStream rng(31);
  for (int d : {1, 2, 3}) {
    const Graph full = HypercubeGraph(5, d);
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<int> keep;
      for (int v = 0; v < 32 && keep.size() < 14; ++v) {
        if (Bernoulli(rng, 0.5)) keep.push_back(v);
      }
      const Graph sub = full.InducedSubgraph(keep);
      EXPECT_EQ(MaxIndependentSet(sub), BruteIndependence(sub));
      EXPECT_EQ(static_cast<int>(MaxMatching(sub)), BruteMatching(sub));
    }
  }
}

TEST(Packing, SweepSmallCubes) {
  for (int n = 1; n <= 9; ++n) {
    for (int d = 0; 2 * d + 1 <= n; ++d) {
      const ClaimReport r = VerifyPackingBound(n, d);
      EXPECT_EQ(r.status, ClaimStatus::kPass) << n << " " << d;
      EXPECT_NEAR(r.rhs, std::ldexp(1.0, n) / BallSize(n, d), 1e-12);
    }
  }
}

TEST(Matching, SweepSmallCubes) {
  for (int n = 2; n <= 6; ++n) {
    for (int d = 1; d <= n; ++d) {
      const ClaimReport r = VerifyMatchingBound(n, d, 50, 7);
      EXPECT_EQ(r.status, ClaimStatus::kPass) << n << " " << d;
      EXPECT_GE(r.lhs, 0.0);
    }
  }
}

TEST(EachBlock, BoundExample) {
  const double expected = 0.5 * std::exp(-3.0) * (16.0 - 16.0 / 5.0);
  EXPECT_NEAR(EachBlockBound(1.0, 0.0, 1, 4, 16), expected, 1e-12);
  EXPECT_NEAR(EachBlockBound(0.5, 0.0, 0, 6, 64), 0.0, 1e-12);
  EXPECT_NEAR(EachBlockBound(0.5, 0.0, 1, 6, 64), 0.5 * std::exp(-1.5) * (64.0 - 64.0 / 7.0), 1e-12);
}

TEST(EachBlock, RandomizedResponseGrid) {
  for (int n : {4, 6, 8}) {
    for (double eps : {0.5, 1.0, 2.0}) {
      for (int d : {0, 1}) {
        const ClaimReport r =
            VerifyEachBlock(RandomizedResponseMechanism(n, eps), kEveryone, eps, 0.0, d, 0, 1);
        ASSERT_EQ(r.status, ClaimStatus::kPass);
        EXPECT_TRUE(r.exact);
        const double keep = std::exp(eps) / (1.0 + std::exp(eps));
        EXPECT_NEAR(r.lhs, std::ldexp(1.0, n) * (1.0 - std::pow(keep, n)), 1e-9);
      }
    }
  }
}

TEST(EachBlock, SampledRouteBracketsExactValue) {
  AnalyzedMechanism m = RandomizedResponseMechanism(14, 1.0);
  const ClaimReport r = VerifyEachBlock(m, kEveryone, 1.0, 0.0, 1, 20000, 3);
  EXPECT_FALSE(r.exact);
  EXPECT_EQ(r.status, ClaimStatus::kPass);
  const double keep = std::exp(1.0) / (1.0 + std::exp(1.0));
  const double truth = std::ldexp(1.0, 14) * (1.0 - std::pow(keep, 14));
  EXPECT_LE(r.details["lhs_interval"][0].get<double>(), truth);
  EXPECT_GE(r.details["lhs_interval"][1].get<double>(), truth);
}

TEST(EachBlock, UnlabeledMechanismIsNotApplicable) {
  const ClaimReport r = VerifyEachBlock(IdentityMechanism(4), kEveryone, 1.0, 0.0, 0, 0, 1);
  EXPECT_EQ(r.status, ClaimStatus::kNotApplicable);
  const ClaimReport loose =
      VerifyEachBlock(RandomizedResponseMechanism(4, 1.0), kEveryone, 0.5, 0.0, 0, 0, 1);
  EXPECT_EQ(loose.status, ClaimStatus::kNotApplicable);
}

TEST(BlockDecomposition, RandomizedResponseExample) {
  const BlockScheme scheme{8, 4, 2};
  const ClaimReport r = VerifyBlockDecomposition(RandomizedResponseMechanism(8, 1.0), kEveryone,
                                                 scheme, 1.0, 0.0, 1, 0.25, 0, 1);
  EXPECT_EQ(r.status, ClaimStatus::kPass);
  const double density = 256.0 / (256.0 * 5.0);
  EXPECT_NEAR(r.rhs, 0.5 * std::exp(-3.0) * (1.0 - density) - 0.25, 1e-12);
  const double flip = 1.0 / (1.0 + std::exp(1.0));
  EXPECT_NEAR(r.lhs, 1.0 - std::pow(1.0 - flip, 8), 1e-9);
  EXPECT_EQ(r.details["witness_x"], "00000000");
  ExpectError(ErrorCode::kParameter, [] { BlockScheme{8, 3, 2}.Validate(); });
}

TEST(Audit, RandomizedResponseCurve) {
  const AnalyzedMechanism rr = RandomizedResponseMechanism(4, 1.0);
  const ClaimReport r = AuditMechanism(rr, B("0110"), B("0111"), {0.25, 0.5, 1.0, 1.5});
  EXPECT_EQ(r.status, ClaimStatus::kPass);
  EXPECT_NEAR(r.lhs, 0.0, 1e-12);
  EXPECT_TRUE(r.details["curve_monotone"].get<bool>());
  const double half = r.details["curve"][1]["delta"].get<double>();
  const double keep = std::exp(1.0) / (1.0 + std::exp(1.0));
  EXPECT_NEAR(half, keep - std::exp(0.5) * (1.0 - keep), 1e-12);
  ExpectError(ErrorCode::kPrecondition,
              [&] { AuditMechanism(rr, B("0110"), B("0101"), {1.0}); });
}

TEST(Audit, MDioViews) {
  const KeylessHash h = KeylessHash::TruncatedDigest(6, DefaultGamma(6));
  const HashValue u = SelectMaxPreimageValue(h).value;
  const MechanismConfig transparent =
      MechanismConfig::Default(h, u, 1.0, ObfuscationBackend::kTransparent);
  const ClaimReport param =
      AuditMechanism(MDioParameterView(transparent), B("000000"), B("100000"), {0.5, 1.0});
  EXPECT_EQ(param.status, ClaimStatus::kPass);
  const ClaimReport full =
      AuditMechanism(MDioFullView(transparent), B("000000"), B("100000"), {0.5, 1.0, 4.0});
  EXPECT_EQ(full.status, ClaimStatus::kNotApplicable);
  EXPECT_NEAR(full.details["curve"][2]["delta"].get<double>(), 1.0, 1e-12);
  const MechanismConfig sealed =
      MechanismConfig::Default(h, u, 1.0, ObfuscationBackend::kBlackbox);
  ExpectError(ErrorCode::kUnsupportedAudit, [&] {
    AuditMechanism(MDioParameterView(sealed), B("000000"), B("100000"), {1.0});
  });
}

TEST(Reports, WilsonAndCombine) {
  const auto [lo, hi] = WilsonInterval(50, 100);
  EXPECT_LT(lo, 0.5);
  EXPECT_GT(hi, 0.5);
  EXPECT_NEAR(lo + hi, 1.0, 1e-12);
  EXPECT_EQ(CombineStatus(ClaimStatus::kPass, ClaimStatus::kInconclusive),
            ClaimStatus::kInconclusive);
  EXPECT_EQ(CombineStatus(ClaimStatus::kViolation, ClaimStatus::kInconclusive),
            ClaimStatus::kViolation);
  EXPECT_EQ(CombineStatus(ClaimStatus::kPass, ClaimStatus::kNotApplicable),
            ClaimStatus::kNotApplicable);
}

}  // namespace
}  // namespace cdplab
