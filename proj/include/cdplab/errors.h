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

#ifndef CDPLAB_ERRORS_H_
#define CDPLAB_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cdplab {

enum class ErrorCode {
  kDimension,
  kParameter,
  kCapacity,
  kDomain,
  kPrecondition,
  kWitness,
  kConfiguration,
  kUnsupportedAudit,
};

inline std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimension:
      return "dimension";
    case ErrorCode::kParameter:
      return "parameter";
    case ErrorCode::kCapacity:
      return "capacity";
    case ErrorCode::kDomain:
      return "domain";
    case ErrorCode::kPrecondition:
      return "precondition";
    case ErrorCode::kWitness:
      return "witness";
    case ErrorCode::kConfiguration:
      return "configuration";
    case ErrorCode::kUnsupportedAudit:
      return "unsupported-audit";
  }
  return "unknown";
}

// All library failures are reported through this one exception type. The
// code lets callers (and the CLI's exit-code logic) branch without parsing
// messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + " error: " +
                           message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Size ceilings for every exhaustive routine. Defaults are the desk-scale
// limits; callers may pass a modified copy.
struct Guards {
  int max_enumeration_n = 24;
  int max_graph_n = 16;
  std::size_t max_independent_set_vertices = 64;
  std::size_t max_matching_vertices = std::size_t{1} << 14;
};

inline const Guards& DefaultGuards() {
  static const Guards kGuards;
  return kGuards;
}

inline void CheckEnumerable(int n, const Guards& guards,
                            std::string_view what) {
  if (n < 0 || n > guards.max_enumeration_n) {
    throw Error(ErrorCode::kCapacity,
                std::string(what) + ": n=" + std::to_string(n) +
                    " exceeds enumeration guard " +
                    std::to_string(guards.max_enumeration_n));
  }
}

}  // namespace cdplab

#endif  // CDPLAB_ERRORS_H_
