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

#ifndef CDPLAB_CIRCUITS_H_
#define CDPLAB_CIRCUITS_H_

#include <algorithm>
#include <bit>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "cdplab/bit_vector.h"
#include "cdplab/errors.h"
#include "cdplab/hashing.h"

namespace cdplab {

template <typename C>
concept Evaluable = requires(const C& c, const BitVector& z) {
  { c.Evaluate(z) } -> std::convertible_to<bool>;
  { c.dimension() } -> std::convertible_to<int>;
};

// Membership circuit for B_r(center) ∩ B_r~(noisy_center) ∩ H^{-1}(upsilon).
// A radius of -1 denotes the empty ball.
class PredicateCircuit {
 public:
  PredicateCircuit(BitVector center, int radius, BitVector noisy_center,
                   int noisy_radius, KeylessHash hash, HashValue upsilon)
      : center_(std::move(center)),
        radius_(radius),
        noisy_center_(std::move(noisy_center)),
        noisy_radius_(noisy_radius),
        hash_(std::move(hash)),
        upsilon_(std::move(upsilon)) {
    center_.RequireSameSize(noisy_center_);
    if (hash_.n() != center_.size()) {
      throw Error(ErrorCode::kDimension, "hash dimension differs from circuit");
    }
    if (upsilon_.gamma() != hash_.gamma()) {
      throw Error(ErrorCode::kDimension, "target hash value has wrong length");
    }
    if (radius_ < -1 || noisy_radius_ < -1) {
      throw Error(ErrorCode::kParameter, "radii must be >= -1");
    }
  }

  bool Evaluate(const BitVector& z) const {
    center_.RequireSameSize(z);
    return HammingDistance(z, center_) <= radius_ &&
           HammingDistance(z, noisy_center_) <= noisy_radius_ &&
           hash_(z) == upsilon_;
  }

  int dimension() const { return center_.size(); }
  const BitVector& center() const { return center_; }
  int radius() const { return radius_; }
  const BitVector& noisy_center() const { return noisy_center_; }
  int noisy_radius() const { return noisy_radius_; }
  const KeylessHash& hash() const { return hash_; }
  const HashValue& upsilon() const { return upsilon_; }

  // Structured description; stands in for the circuit's size.
  Json ToJson() const {
    Json j;
    j["x"] = center_.ToString();
    j["r"] = radius_;
    j["x_tilde"] = noisy_center_.ToString();
    j["r_tilde"] = noisy_radius_;
    j["hash"] = hash_.ToJson();
    j["upsilon"] = upsilon_.ToString();
    return j;
  }

  static PredicateCircuit FromJson(const Json& j) {
    return PredicateCircuit(BitVector::FromString(j.at("x").get<std::string>()),
                            j.at("r").get<int>(),
                            BitVector::FromString(j.at("x_tilde").get<std::string>()),
                            j.at("r_tilde").get<int>(),
                            KeylessHash::FromJson(j.at("hash")),
                            HashValue(BitVector::FromString(
                                j.at("upsilon").get<std::string>())));
  }

  friend bool operator==(const PredicateCircuit&, const PredicateCircuit&) = default;

 private:
  BitVector center_;
  int radius_;
  BitVector noisy_center_;
  int noisy_radius_;
  KeylessHash hash_;
  HashValue upsilon_;
};

// Top-level AND of two evaluable circuits.
template <Evaluable L, Evaluable R>
class AndCircuit {
 public:
  AndCircuit(L left, R right) : left_(std::move(left)), right_(std::move(right)) {
    if (left_.dimension() != right_.dimension()) {
      throw Error(ErrorCode::kDimension, "AND operands differ in dimension");
    }
  }

  bool Evaluate(const BitVector& z) const {
    return left_.Evaluate(z) && right_.Evaluate(z);
  }
  int dimension() const { return left_.dimension(); }
  const L& left() const { return left_; }
  const R& right() const { return right_; }

 private:
  L left_;
  R right_;
};

// Circuit given by an explicit accepted set. Used for oracles and tests.
class SetCircuit {
 public:
  SetCircuit(int n, std::vector<BitVector> accepted) : n_(n) {
    for (BitVector& v : accepted) {
      if (v.size() != n) throw Error(ErrorCode::kDimension, "set element length");
      accepted_.insert(std::move(v));
    }
  }

  static SetCircuit All(int n) {
    std::vector<BitVector> all;
    ForEachPoint(n, [&](const BitVector& z) { all.push_back(z); });
    return SetCircuit(n, std::move(all));
  }

  bool Evaluate(const BitVector& z) const {
    if (z.size() != n_) throw Error(ErrorCode::kDimension, "input length");
    return accepted_.contains(z);
  }
  int dimension() const { return n_; }

 private:
  int n_;
  std::unordered_set<BitVector> accepted_;
};

template <Evaluable C>
bool Evaluate(const C& c, const BitVector& z) {
  if (z.size() != c.dimension()) {
    throw Error(ErrorCode::kDimension,
                "circuit expects n=" + std::to_string(c.dimension()) +
                    ", got " + std::to_string(z.size()));
  }
  return c.Evaluate(z);
}

template <Evaluable C>
std::vector<BitVector> AcceptedSet(const C& c, int n,
                                   const Guards& guards = DefaultGuards()) {
  CheckEnumerable(n, guards, "accepted-set enumeration");
  std::vector<BitVector> out;
  ForEachPoint(n, [&](const BitVector& z) {
    if (Evaluate(c, z)) out.push_back(z);
  });
  return out;
}

// Exact diameter of c^{-1}(1); nullopt marks the empty set.
template <Evaluable C>
std::optional<int> BruteDiameter(const C& c, int n,
                                 const Guards& guards = DefaultGuards()) {
  CheckEnumerable(n, guards, "brute_diameter");
  std::vector<std::uint64_t> points;
  ForEachPoint(n, [&](const BitVector& z) {
    if (Evaluate(c, z)) points.push_back(z.ToIndex());
  });
  if (points.empty()) return std::nullopt;
  int diameter = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      diameter = std::max(diameter, std::popcount(points[i] ^ points[j]));
    }
  }
  return diameter;
}

// Smallest accepted point, most significant bit first; nullopt if none.
template <Evaluable C>
std::optional<BitVector> LexFirstAccepted(const C& c, int n,
                                          const Guards& guards = DefaultGuards()) {
  CheckEnumerable(n, guards, "lex_first_accepted");
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t i = 0; i < count; ++i) {
    BitVector z = BitVector::FromIndex(n, i);
    if (Evaluate(c, z)) return z;
  }
  return std::nullopt;
}

// |B_r| = sum_{i <= r} C(n, i).
inline std::uint64_t BallSize(int n, int r) {
  if (n < 0 || n > 62 || r < 0 || r > n) {
    throw Error(ErrorCode::kParameter,
                "ball_size needs 0 <= r <= n <= 62, got n=" + std::to_string(n) +
                    " r=" + std::to_string(r));
  }
  std::uint64_t total = 0;
  std::uint64_t binom = 1;
  for (int i = 0; i <= r; ++i) {
    total += binom;
    binom = static_cast<std::uint64_t>(static_cast<unsigned __int128>(binom) *
                                       static_cast<unsigned>(n - i) /
                                       static_cast<unsigned>(i + 1));
  }
  return total;
}

// Default integer radii: r = floor(0.5 n^0.9), r~ = floor(n/(1+e^eps) + n^0.6).
inline int DefaultRadius(int n) {
  return static_cast<int>(std::floor(0.5 * std::pow(static_cast<double>(n), 0.9)));
}

inline int DefaultNoisyRadius(int n, double epsilon) {
  return static_cast<int>(std::floor(n / (1.0 + std::exp(epsilon)) +
                                     std::pow(static_cast<double>(n), 0.6)));
}

}  // namespace cdplab

#endif  // CDPLAB_CIRCUITS_H_
