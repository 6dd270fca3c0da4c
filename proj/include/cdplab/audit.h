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

#ifndef CDPLAB_AUDIT_H_
#define CDPLAB_AUDIT_H_

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "cdplab/bit_vector.h"
#include "cdplab/distribution.h"
#include "cdplab/errors.h"
#include "cdplab/lower_bounds.h"
#include "cdplab/mechanisms.h"
#include "cdplab/obfuscation.h"
#include "cdplab/randomized_response.h"
#include "cdplab/report.h"

namespace cdplab {

// Extends both distributions to the union of their outcome spaces with zero
// mass on the added outcomes.
template <typename Prob>
std::pair<FiniteDistribution<Prob>, FiniteDistribution<Prob>> AlignSpaces(
    const FiniteDistribution<Prob>& p, const FiniteDistribution<Prob>& q) {
  std::map<std::uint64_t, Prob> a = p.masses(), b = q.masses();
  for (const auto& entry : p.masses()) b.try_emplace(entry.first, Prob(0));
  for (const auto& entry : q.masses()) a.try_emplace(entry.first, Prob(0));
  return {FiniteDistribution<Prob>(std::move(a)), FiniteDistribution<Prob>(std::move(b))};
}

// View of m_dio whose outcome is the noisy center x~ alone; every other
// circuit parameter (r, r~, hash, upsilon) is independent of the input.
inline AnalyzedMechanism MDioParameterView(const MechanismConfig& cfg) {
  AnalyzedMechanism m;
  m.name = "m_dio/parameter-view";
  m.n = cfg.n;
  m.transparent = cfg.backend == ObfuscationBackend::kTransparent;
  const double epsilon = cfg.epsilon;
  m.distribution = [epsilon](const BitVector& x) { return ExactRrDistribution(x, epsilon); };
  m.sampler = [cfg](const BitVector& x, RandomStream& rng) {
    return MDioAux(x, cfg, rng).x_tilde;
  };
  m.declared = PrivacyParams(epsilon, 0.0);
  return m;
}

// View of m_dio exposing every transparent circuit parameter including the
// center. Outcome key: (center index << n) | x~ index. Carries no label.
inline AnalyzedMechanism MDioFullView(const MechanismConfig& cfg) {
  if (cfg.n > 31) throw Error(ErrorCode::kCapacity, "full view needs n <= 31");
  AnalyzedMechanism m;
  m.name = "m_dio/full-view";
  m.n = cfg.n;
  m.transparent = cfg.backend == ObfuscationBackend::kTransparent;
  const double epsilon = cfg.epsilon;
  const int n = cfg.n;
  m.distribution = [epsilon, n](const BitVector& x) {
    std::map<std::uint64_t, double> mass;
    const std::uint64_t high = x.ToIndex() << n;
    const auto noisy_dist = ExactRrDistribution(x, epsilon);
    for (const auto& [noisy, p] : noisy_dist.masses()) {
      mass[high | noisy] = p;
    }
    return FiniteDistribution<double>(std::move(mass));
  };
  return m;
}


// Tightest delta over an epsilon grid for one adjacent pair. The report's lhs
// is delta at the declared epsilon and rhs the declared delta.
inline ClaimReport AuditMechanism(const AnalyzedMechanism& m, const BitVector& x,
                                  const BitVector& x_prime,
                                  const std::vector<double>& epsilon_grid) {
  if (!m.transparent || !m.distribution) {
    throw Error(ErrorCode::kUnsupportedAudit,
                m.name + " exposes no transparent output distribution");
  }
  if (HammingDistance(x, x_prime) != 1) {
    throw Error(ErrorCode::kPrecondition, "audit needs adjacent inputs");
  }
  const auto [p, q] = AlignSpaces(m.distribution(x), m.distribution(x_prime));
  ClaimReport report;
  report.claim = "privacy-label";
  report.exact = true;
  report.details["mechanism"] = m.name;
  report.details["x"] = x.ToString();
  report.details["x_prime"] = x_prime.ToString();
  Json curve = Json::array();
  double previous = 2.0;
  bool monotone = true;
  for (double eps : epsilon_grid) {
    const double delta = HockeyStickAt(p, q, eps);
    curve.push_back({{"epsilon", eps}, {"delta", delta}});
    monotone = monotone && delta <= previous + 1e-12;
    previous = delta;
  }
  report.details["curve"] = curve;
  report.details["curve_monotone"] = monotone;
  if (!m.declared) {
    report.status = ClaimStatus::kNotApplicable;
    report.details["reason"] = "mechanism carries no privacy label";
    return report;
  }
  report.details["declared_epsilon"] = m.declared->epsilon();
  report.details["declared_delta"] = m.declared->delta();
  report.lhs = HockeyStickAt(p, q, m.declared->epsilon());
  report.rhs = m.declared->delta();
  report.status = report.lhs <= report.rhs + kExactTolerance ? ClaimStatus::kPass
                                                              : ClaimStatus::kViolation;
  return report;
}

}  // namespace cdplab

#endif  // CDPLAB_AUDIT_H_
