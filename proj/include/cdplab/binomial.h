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

#ifndef CDPLAB_BINOMIAL_H_
#define CDPLAB_BINOMIAL_H_

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "cdplab/errors.h"

namespace cdplab {

// pmf of Bin(n, p), built by convolving n Bernoulli(p) factors one at a time.
inline std::vector<double> BinomialPmf(int n, double p) {
  if (n < 0 || !(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::kParameter, "binomial needs n >= 0 and p in [0,1]");
  }
  std::vector<double> pmf(1, 1.0);
  for (int trial = 0; trial < n; ++trial) {
    std::vector<double> next(pmf.size() + 1, 0.0);
    for (std::size_t k = 0; k < pmf.size(); ++k) {
      next[k] += pmf[k] * (1.0 - p);
      next[k + 1] += pmf[k] * p;
    }
    pmf = std::move(next);
  }
  return pmf;
}

inline std::vector<double> Convolve(const std::vector<double>& a,
                                    const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// Pr[X <= k] for a pmf indexed from 0; k < 0 gives 0.
inline double LowerTail(const std::vector<double>& pmf, int k) {
  double total = 0.0;
  for (int i = 0; i <= k && i < static_cast<int>(pmf.size()); ++i) total += pmf[i];
  return std::min(total, 1.0);
}

inline double BinomialCdf(int n, double p, int k) {
  return LowerTail(BinomialPmf(n, p), k);
}

// Pr[Bin(d, p) + Bin(n - d, q) <= k].
inline double TwoBinomialCdf(int d, double p, int n_minus_d, double q, int k) {
  return LowerTail(Convolve(BinomialPmf(d, p), BinomialPmf(n_minus_d, q)), k);
}

// Bernstein: Pr[S <= E[S] - t] <= exp(-t^2 / (2 v + (2/3) t)) for a sum S of
// independent [0,1]-valued terms with total variance v, t > 0.
inline double BernsteinTailBound(double t, double variance) {
  if (!(t > 0.0)) {
    throw Error(ErrorCode::kParameter, "Bernstein bound needs t > 0");
  }
  return std::exp(-(t * t) / (2.0 * variance + (2.0 / 3.0) * t));
}

}  // namespace cdplab

#endif  // CDPLAB_BINOMIAL_H_
