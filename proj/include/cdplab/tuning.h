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

#ifndef CDPLAB_TUNING_H_
#define CDPLAB_TUNING_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cdplab/bit_vector.h"
#include "cdplab/errors.h"
#include "cdplab/mechanisms.h"
#include "cdplab/privacy.h"
#include "cdplab/random.h"
#include "cdplab/randomized_response.h"

namespace cdplab {

// One base-mechanism draw: a candidate and its (noisy) score. `noise` records
// the additive noise inside `score` when the base exposes it.
struct ScoredCandidate {
  BitVector y;
  double score = 0.0;
  double noise = 0.0;
};

using ScoredMechanism =
    std::function<ScoredCandidate(const BitVector&, RandomStream&)>;

struct TuningConfig {
  double threshold = 0.0;
  std::uint64_t steps = 0;
  double stop_probability = 1.0;

  void Validate() const {
    if (!(stop_probability > 0.0 && stop_probability <= 1.0)) {
      throw Error(ErrorCode::kParameter, "stopping probability must lie in (0,1]");
    }
    if (static_cast<double>(steps) < 2.0 / stop_probability) {
      throw Error(ErrorCode::kPrecondition, "tuning needs T >= 2/gamma");
    }
  }
};

struct TuningResult {
  std::optional<BitVector> output;  // nullopt is the bottom symbol
  std::vector<ScoredCandidate> trace;
  bool stopped_early = false;       // the gamma coin halted the loop
};

// Runs the base up to T times; returns the first candidate whose score is at
// most the threshold, and after each rejection halts with bottom with
// probability gamma. Exhausting T also yields bottom.
inline TuningResult MTuning(const ScoredMechanism& base, const TuningConfig& cfg,
                            const BitVector& x, RandomStream& rng) {
  cfg.Validate();
  TuningResult result;
  for (std::uint64_t j = 0; j < cfg.steps; ++j) {
    ScoredCandidate draw = base(x, rng);
    result.trace.push_back(draw);
    if (draw.score <= cfg.threshold) {
      result.output = std::move(draw.y);
      return result;
    }
    if (Bernoulli(rng, cfg.stop_probability)) {
      result.stopped_early = true;
      return result;
    }
  }
  return result;
}

// (2 eps + 1, 10 e^{2 eps} delta / gamma) for an (eps, delta) base; delta is
// capped at 1.
inline PrivacyParams TuningPrivacy(const PrivacyParams& base, double stop_probability) {
  if (!(stop_probability > 0.0 && stop_probability <= 1.0)) {
    throw Error(ErrorCode::kParameter, "stopping probability must lie in (0,1]");
  }
  return PrivacyParams(
      2.0 * base.epsilon() + 1.0,
      std::min(1.0, 10.0 * std::exp(2.0 * base.epsilon()) * base.delta() / stop_probability));
}

// Parameters of the usefulness booster for an (eps, delta)-private,
// alpha-useful nearby-point mechanism at distance tau. All logs are natural.
struct BoostPlan {
  int n = 0;
  double exponent = 1.0;  // the C in 1 - 1/n^C
  double epsilon = 0.0;
  double delta = 0.0;
  double alpha = 0.0;
  double tau = 0.0;
  double t_hat = 0.0;  // rounded up
  double stop_probability = 0.0;
  std::uint64_t steps = 0;  // rounded up
  double margin = 0.0;      // ln(10 n^C T^) / eps
  double tau_prime = 0.0;
  double threshold = 0.0;
  PrivacyParams base_privacy;
  PrivacyParams declared_privacy;
  double event1_bound = 0.0;
  double event2_bound = 0.0;
  double event3_bound = 0.0;

  double event_bound_sum() const { return event1_bound + event2_bound + event3_bound; }
  double failure_target() const { return 0.9 / std::pow(n, exponent); }

  Json ToJson() const {
    Json j;
    j["n"] = n;
    j["C"] = exponent;
    j["epsilon"] = epsilon;
    j["delta"] = delta;
    j["alpha"] = alpha;
    j["tau"] = tau;
    j["t_hat"] = t_hat;
    j["gamma"] = stop_probability;
    j["T"] = steps;
    j["margin"] = margin;
    j["tau_prime"] = tau_prime;
    j["threshold"] = threshold;
    j["declared_epsilon"] = declared_privacy.epsilon();
    j["declared_delta"] = declared_privacy.delta();
    j["E1_bound"] = event1_bound;
    j["E2_bound"] = event2_bound;
    j["E3_bound"] = event3_bound;
    j["event_bound_sum"] = event_bound_sum();
    j["event_bound_target"] = failure_target();
    return j;
  }
};

inline BoostPlan PlanBoost(const PrivacyParams& privacy, double alpha, double tau,
                           double exponent, int n) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw Error(ErrorCode::kConfiguration, "boost needs alpha in (0,1]");
  }
  if (!(privacy.epsilon() > 0.0)) {
    throw Error(ErrorCode::kConfiguration, "boost needs epsilon > 0");
  }
  if (n < 1 || !(exponent > 0.0)) {
    throw Error(ErrorCode::kConfiguration, "boost needs n >= 1 and C > 0");
  }
  const double n_c = std::pow(static_cast<double>(n), exponent);
  const double raw_t_hat = std::log(5.0 * n_c) / alpha;
  if (raw_t_hat < 1.0) {
    throw Error(ErrorCode::kConfiguration, "parameters give T^ < 1");
  }
  BoostPlan p;
  p.n = n;
  p.exponent = exponent;
  p.epsilon = privacy.epsilon();
  p.delta = privacy.delta();
  p.alpha = alpha;
  p.tau = tau;
  p.t_hat = std::ceil(raw_t_hat);
  p.stop_probability = 0.5 / (n_c * p.t_hat);
  p.steps = static_cast<std::uint64_t>(std::ceil(2.0 / p.stop_probability));
  p.margin = std::log(10.0 * n_c * p.t_hat) / p.epsilon;
  p.tau_prime = tau + 2.0 * p.margin;
  p.threshold = p.tau_prime - p.margin;
  // Base = M followed by a Laplace(1/eps) score: (2 eps, delta) by composition.
  p.base_privacy = Compose(privacy, PrivacyParams(p.epsilon, 0.0));
  p.declared_privacy = TuningPrivacy(p.base_privacy, p.stop_probability);
  // Pr[|Lap(1/eps)| > margin] = exp(-eps * margin), counted twice as in the
  // union bound, over T^ runs.
  p.event1_bound = p.t_hat * 2.0 * std::exp(-p.epsilon * p.margin);
  p.event2_bound = std::pow(1.0 - alpha, p.t_hat);
  p.event3_bound = p.stop_probability * p.t_hat;
  return p;
}

// Scored base of the booster: y <- M(x), q = ||x - y||_1 + Lap(1/eps).
inline ScoredMechanism LaplaceScoredBase(NbpMechanism m, double epsilon) {
  return [m = std::move(m), epsilon](const BitVector& x, RandomStream& rng) {
    BitVector y = m(x, rng);
    const double z = LaplaceNoise(1.0 / epsilon, rng);
    const double q = HammingDistance(x, y) + z;
    return ScoredCandidate{std::move(y), q, z};
  };
}

struct BoostRun {
  BitVector output;
  bool bottom = false;
  TuningResult tuning;
};

// Boosted mechanism: tuning over the Laplace-scored base; bottom maps to 0^n.
inline BoostRun RunBoost(const NbpMechanism& m, const BoostPlan& plan,
                         const BitVector& x, RandomStream& rng) {
  const ScoredMechanism base = LaplaceScoredBase(m, plan.epsilon);
  TuningConfig cfg{plan.threshold, plan.steps, plan.stop_probability};
  BoostRun run;
  run.tuning = MTuning(base, cfg, x, rng);
  run.bottom = !run.tuning.output.has_value();
  run.output = run.bottom ? BitVector::Zeros(x.size()) : *run.tuning.output;
  return run;
}

inline NbpMechanism Boost(NbpMechanism m, const BoostPlan& plan) {
  return [m = std::move(m), plan](const BitVector& x, RandomStream& rng) {
    return RunBoost(m, plan, x, rng).output;
  };
}

}  // namespace cdplab

#endif  // CDPLAB_TUNING_H_
