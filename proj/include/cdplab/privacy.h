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

#ifndef CDPLAB_PRIVACY_H_
#define CDPLAB_PRIVACY_H_

#include <algorithm>
#include <cmath>
#include <string>

#include "cdplab/errors.h"

namespace cdplab {

// An (epsilon, delta) pair. Mechanisms carry these as declared labels; the
// audit code checks labels where exact output distributions are available.
class PrivacyParams {
 public:
  PrivacyParams() = default;
  PrivacyParams(double epsilon, double delta) : epsilon_(epsilon), delta_(delta) {
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
      throw Error(ErrorCode::kParameter,
                  "epsilon must be finite and >= 0, got " +
                      std::to_string(epsilon));
    }
    if (!(delta >= 0.0 && delta <= 1.0)) {
      throw Error(ErrorCode::kParameter,
                  "delta must lie in [0,1], got " + std::to_string(delta));
    }
  }

  double epsilon() const { return epsilon_; }
  double delta() const { return delta_; }

  friend bool operator==(const PrivacyParams&, const PrivacyParams&) = default;

 private:
  double epsilon_ = 0.0;
  double delta_ = 0.0;
};

// Basic composition. Delta is a probability bound, so the sum is capped at 1.
inline PrivacyParams Compose(const PrivacyParams& a, const PrivacyParams& b) {
  return PrivacyParams(a.epsilon() + b.epsilon(),
                       std::min(1.0, a.delta() + b.delta()));
}

// (e^{t eps} - 1) / (e^eps - 1), with the eps -> 0 limit t.
inline double GroupDeltaFactor(double epsilon, int t) {
  if (epsilon == 0.0) return static_cast<double>(t);
  return std::expm1(t * epsilon) / std::expm1(epsilon);
}

// Guarantee between datasets at distance t: (t eps, factor * delta).
// The returned delta is capped at 1; callers that need the raw product use
// GroupDeltaFactor directly.
inline PrivacyParams GroupPrivacy(const PrivacyParams& params, int t) {
  if (t < 1) {
    throw Error(ErrorCode::kParameter,
                "group size must be >= 1, got " + std::to_string(t));
  }
  if (params.delta() == 0.0) return PrivacyParams(t * params.epsilon(), 0.0);
  return PrivacyParams(
      t * params.epsilon(),
      std::min(1.0, GroupDeltaFactor(params.epsilon(), t) * params.delta()));
}

}  // namespace cdplab

#endif  // CDPLAB_PRIVACY_H_
