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

#ifndef CDPLAB_REPORT_H_
#define CDPLAB_REPORT_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cdplab/hashing.h"

namespace cdplab {

enum class ClaimStatus { kPass, kInconclusive, kViolation, kNotApplicable };

inline std::string ClaimStatusName(ClaimStatus s) {
  switch (s) {
    case ClaimStatus::kPass:
      return "pass";
    case ClaimStatus::kInconclusive:
      return "inconclusive";
    case ClaimStatus::kViolation:
      return "violation";
    case ClaimStatus::kNotApplicable:
      return "not-applicable";
  }
  return "unknown";
}

// Outcome of checking one inequality "lhs >= rhs" (or the claim's stated
// direction) for one parameter cell.
struct ClaimReport {
  std::string claim;
  double lhs = 0.0;
  double rhs = 0.0;
  bool exact = true;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  ClaimStatus status = ClaimStatus::kPass;
  bool vacuous = false;  // rhs <= 0: holds for every mechanism
  Json details = Json::object();

  std::string mode() const {
    if (status == ClaimStatus::kInconclusive) return "inconclusive";
    return exact ? "exact" : "monte-carlo";
  }

  Json ToJson() const {
    Json j;
    j["claim"] = claim;
    j["lhs"] = lhs;
    j["rhs"] = rhs;
    j["mode"] = mode();
    j["trials"] = trials;
    j["seed"] = seed;
    j["status"] = ClaimStatusName(status);
    j["vacuous"] = vacuous;
    if (!details.empty()) j["details"] = details;
    return j;
  }
};

// Wilson score interval for a binomial proportion at z standard errors.
inline std::pair<double, double> WilsonInterval(std::uint64_t successes,
                                                std::uint64_t trials, double z = 3.0) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = successes / n;
  const double denom = 1.0 + z * z / n;
  const double center = (p + z * z / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

// Worst status wins: violation > inconclusive > not applicable > pass.
inline ClaimStatus CombineStatus(ClaimStatus a, ClaimStatus b) {
  auto rank = [](ClaimStatus s) {
    switch (s) {
      case ClaimStatus::kViolation:
        return 3;
      case ClaimStatus::kInconclusive:
        return 2;
      case ClaimStatus::kNotApplicable:
        return 1;
      case ClaimStatus::kPass:
        return 0;
    }
    return 0;
  };
  return rank(a) >= rank(b) ? a : b;
}

}  // namespace cdplab

#endif  // CDPLAB_REPORT_H_
