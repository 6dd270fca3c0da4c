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

#ifndef CDPLAB_DISTRIBUTION_H_
#define CDPLAB_DISTRIBUTION_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cdplab/errors.h"

namespace cdplab {

using Rational = boost::multiprecision::cpp_rational;

// Arithmetic model for "exact" audits: e^eps is replaced by a decimal
// rational rounded to `digits` places. Reports record `digits`.
struct ExactArithmetic {
  int digits = 15;
};

inline Rational RationalExp(double epsilon, const ExactArithmetic& model = {}) {
  if (model.digits < 1 || model.digits > 17) {
    throw Error(ErrorCode::kParameter, "exp approximation digits must be 1..17");
  }
  boost::multiprecision::cpp_int scale = 1;
  for (int i = 0; i < model.digits; ++i) scale *= 10;
  const long double value =
      std::exp(static_cast<long double>(epsilon)) *
      static_cast<long double>(std::pow(10.0L, model.digits));
  const auto numerator =
      boost::multiprecision::cpp_int(static_cast<std::uint64_t>(std::llround(value)));
  return Rational(numerator, scale);
}

namespace internal {

template <typename Prob>
double ToDouble(const Prob& p) {
  if constexpr (std::is_same_v<Prob, double>) {
    return p;
  } else {
    return p.template convert_to<double>();
  }
}

}  // namespace internal

// Exact probability map over a declared outcome space. Outcomes present with
// zero mass are part of the space; two distributions are comparable only when
// their spaces coincide.
template <typename Prob>
class FiniteDistribution {
 public:
  using Outcome = std::uint64_t;

  FiniteDistribution() = default;

  explicit FiniteDistribution(std::map<Outcome, Prob> mass)
      : mass_(std::move(mass)) {
    for (const auto& [outcome, p] : mass_) {
      if (p < 0 || p > 1) {
        throw Error(ErrorCode::kParameter,
                    "probability mass outside [0,1] at outcome " +
                        std::to_string(outcome));
      }
    }
    if constexpr (std::is_same_v<Prob, double>) {
      // Neumaier summation keeps the check meaningful for 2^24 outcomes.
      double sum = 0.0, comp = 0.0;
      for (const auto& entry : mass_) {
        const double v = entry.second;
        const double t = sum + v;
        comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
        sum = t;
      }
      if (std::abs(sum + comp - 1.0) > 1e-12) {
        throw Error(ErrorCode::kParameter,
                    "distribution total mass differs from 1 by more than 1e-12");
      }
    } else {
      // Integer sum over a common denominator avoids per-step normalization.
      using boost::multiprecision::cpp_int;
      cpp_int common = 1;
      for (const auto& entry : mass_) {
        const cpp_int& d = boost::multiprecision::denominator(entry.second);
        if (common % d != 0) common = boost::multiprecision::lcm(common, d);
      }
      cpp_int total = 0;
      for (const auto& entry : mass_) {
        total += boost::multiprecision::numerator(entry.second) *
                 (common / boost::multiprecision::denominator(entry.second));
      }
      if (total != common) {
        throw Error(ErrorCode::kParameter,
                    "rational distribution total mass is not exactly 1");
      }
    }
  }

  static FiniteDistribution PointMass(Outcome at,
                                      const std::vector<Outcome>& space) {
    std::map<Outcome, Prob> mass;
    for (Outcome o : space) mass[o] = 0;
    mass[at] = 1;
    return FiniteDistribution(std::move(mass));
  }

  Prob Mass(Outcome o) const {
    auto it = mass_.find(o);
    return it == mass_.end() ? Prob(0) : it->second;
  }

  std::size_t size() const { return mass_.size(); }
  const std::map<Outcome, Prob>& masses() const { return mass_; }

  bool SameSpace(const FiniteDistribution& other) const {
    if (mass_.size() != other.mass_.size()) return false;
    return std::equal(mass_.begin(), mass_.end(), other.mass_.begin(),
                      [](const auto& a, const auto& b) { return a.first == b.first; });
  }

 private:
  std::map<Outcome, Prob> mass_;
};

// Tightest delta such that P and Q are (eps, delta)-indistinguishable, where
// `exp_epsilon` is e^eps in the distribution's arithmetic.
template <typename Prob>
Prob HockeyStickWithFactor(const FiniteDistribution<Prob>& p,
                 const FiniteDistribution<Prob>& q, const Prob& exp_epsilon) {
  if (!p.SameSpace(q)) {
    throw Error(ErrorCode::kDomain,
                "hockey-stick divergence needs identical outcome spaces");
  }
  Prob forward = 0;
  Prob backward = 0;
  auto it_q = q.masses().begin();
  for (const auto& [outcome, mass_p] : p.masses()) {
    const Prob& mass_q = it_q->second;
    Prob f = mass_p - exp_epsilon * mass_q;
    if (f > 0) forward += f;
    Prob b = mass_q - exp_epsilon * mass_p;
    if (b > 0) backward += b;
    ++it_q;
  }
  Prob delta = forward > backward ? forward : backward;
  if constexpr (std::is_same_v<Prob, double>) {
    delta = std::clamp(delta, 0.0, 1.0);
  }
  return delta;
}

inline double HockeyStickAt(const FiniteDistribution<double>& p,
                            const FiniteDistribution<double>& q,
                            double epsilon) {
  return HockeyStickWithFactor<double>(p, q, std::exp(epsilon));
}

// Exact rational divergence. Masses are rescaled to one common denominator so
// the sums run over integers and only the result is normalized.
inline Rational HockeyStickExact(const FiniteDistribution<Rational>& p,
                                 const FiniteDistribution<Rational>& q,
                                 const Rational& exp_epsilon) {
  using boost::multiprecision::cpp_int;
  if (!p.SameSpace(q)) {
    throw Error(ErrorCode::kDomain,
                "hockey-stick divergence needs identical outcome spaces");
  }
  cpp_int common = 1;
  for (const auto* dist : {&p, &q}) {
    for (const auto& entry : dist->masses()) {
      const cpp_int& d = boost::multiprecision::denominator(entry.second);
      if (common % d != 0) common = boost::multiprecision::lcm(common, d);
    }
  }
  auto scaled = [&common](const Rational& m) {
    return boost::multiprecision::numerator(m) *
           (common / boost::multiprecision::denominator(m));
  };
  const cpp_int a = boost::multiprecision::numerator(exp_epsilon);
  const cpp_int b = boost::multiprecision::denominator(exp_epsilon);
  cpp_int forward = 0, backward = 0;
  auto it_q = q.masses().begin();
  for (const auto& entry : p.masses()) {
    const cpp_int mp = scaled(entry.second);
    const cpp_int mq = scaled(it_q->second);
    const cpp_int f = b * mp - a * mq;
    if (f > 0) forward += f;
    const cpp_int g = b * mq - a * mp;
    if (g > 0) backward += g;
    ++it_q;
  }
  return Rational(forward > backward ? forward : backward, b * common);
}

}  // namespace cdplab

#endif  // CDPLAB_DISTRIBUTION_H_
