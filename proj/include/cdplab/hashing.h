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

#ifndef CDPLAB_HASHING_H_
#define CDPLAB_HASHING_H_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <stdexcept>
#include <utility>
#include <vector>

#include <openssl/evp.h>

#include "cdplab/bit_vector.h"
#include "cdplab/errors.h"
#include "cdplab/random.h"
#include "json.hpp"

namespace cdplab {

using Json = nlohmann::ordered_json;

// A gamma-bit hash output.
class HashValue {
 public:
  HashValue() = default;
  explicit HashValue(BitVector bits) : bits_(std::move(bits)) {}

  static HashValue FromIndex(int gamma, std::uint64_t value) {
    return HashValue(BitVector::FromIndex(gamma, value));
  }

  int gamma() const { return bits_.size(); }
  const BitVector& bits() const { return bits_; }
  std::uint64_t ToIndex() const { return bits_.ToIndex(); }
  std::string ToString() const { return bits_.ToString(); }

  friend bool operator==(const HashValue&, const HashValue&) = default;

 private:
  BitVector bits_;
};

enum class HashBackend { kTruncatedDigest, kToyLinear };

inline std::string HashBackendName(HashBackend backend) {
  return backend == HashBackend::kTruncatedDigest ? "truncated-digest"
                                                  : "toy-linear";
}

inline HashBackend ParseHashBackend(const std::string& name) {
  if (name == "truncated-digest") return HashBackend::kTruncatedDigest;
  if (name == "toy-linear") return HashBackend::kToyLinear;
  throw Error(ErrorCode::kConfiguration, "unknown hash backend '" + name + "'");
}

// ceil((log2 n)^1.5), clamped into [1, n].
inline int DefaultGamma(int n) {
  if (n < 1) throw Error(ErrorCode::kParameter, "n must be >= 1");
  const int gamma =
      static_cast<int>(std::ceil(std::pow(std::log2(static_cast<double>(n)), 1.5)));
  return std::clamp(gamma, 1, n);
}

namespace internal {

inline std::array<std::uint8_t, 32> Sha256(const std::vector<std::uint8_t>& data) {
  std::array<std::uint8_t, 32> out{};
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &length, EVP_sha256(),
                 nullptr) != 1 ||
      length != out.size()) {
    throw std::runtime_error("SHA-256 evaluation failed");
  }
  return out;
}

// Digest input: n as a 4-byte big-endian length, then the packed bits.
inline std::vector<std::uint8_t> DigestInput(const BitVector& x) {
  const auto n = static_cast<std::uint32_t>(x.size());
  std::vector<std::uint8_t> bytes = {
      static_cast<std::uint8_t>(n >> 24), static_cast<std::uint8_t>(n >> 16),
      static_cast<std::uint8_t>(n >> 8), static_cast<std::uint8_t>(n)};
  const auto packed = x.Pack();
  bytes.insert(bytes.end(), packed.begin(), packed.end());
  return bytes;
}

}  // namespace internal

// Keyless hash H: {0,1}^n -> {0,1}^gamma.
//
// kTruncatedDigest keeps the first gamma bits (most significant first) of
// SHA-256 over internal::DigestInput(x). kToyLinear multiplies by a gamma x n
// parity matrix over GF(2); it exists so tests have analytic preimages.
class KeylessHash {
 public:
  static KeylessHash TruncatedDigest(int n, int gamma) {
    CheckShape(n, gamma);
    if (gamma > 256) {
      throw Error(ErrorCode::kParameter, "truncated digest supports gamma <= 256");
    }
    KeylessHash h;
    h.n_ = n;
    h.gamma_ = gamma;
    h.backend_ = HashBackend::kTruncatedDigest;
    return h;
  }

  // Random full-rank (hence surjective) parity matrix drawn from `seed`.
  static KeylessHash ToyLinear(int n, int gamma, std::uint64_t seed) {
    CheckShape(n, gamma);
    RandomStream rng(seed);
    std::vector<BitVector> rows;
    do {
      rows.clear();
      for (int i = 0; i < gamma; ++i) {
        BitVector row(n);
        for (int j = 0; j < n; ++j) row.Set(j, rng() >> 63);
        rows.push_back(std::move(row));
      }
    } while (Rank(rows) != gamma);
    KeylessHash h = WithMatrix(std::move(rows));
    h.seed_ = seed;
    return h;
  }

  // Declared parity matrix; any rank is accepted.
  static KeylessHash WithMatrix(std::vector<BitVector> rows) {
    if (rows.empty()) throw Error(ErrorCode::kParameter, "matrix needs rows");
    const int n = rows.front().size();
    for (const BitVector& row : rows) rows.front().RequireSameSize(row);
    CheckShape(n, static_cast<int>(rows.size()));
    KeylessHash h;
    h.n_ = n;
    h.gamma_ = static_cast<int>(rows.size());
    h.backend_ = HashBackend::kToyLinear;
    h.rows_ = std::move(rows);
    return h;
  }

  static KeylessHash Make(HashBackend backend, int n, int gamma,
                          std::uint64_t seed) {
    return backend == HashBackend::kTruncatedDigest ? TruncatedDigest(n, gamma)
                                                    : ToyLinear(n, gamma, seed);
  }

  HashValue operator()(const BitVector& x) const {
    if (x.size() != n_) {
      throw Error(ErrorCode::kDimension,
                  "hash input has length " + std::to_string(x.size()) +
                      ", expected " + std::to_string(n_));
    }
    BitVector out(gamma_);
    if (backend_ == HashBackend::kTruncatedDigest) {
      const auto digest = internal::Sha256(internal::DigestInput(x));
      for (int i = 0; i < gamma_; ++i) {
        out.Set(i, (digest[i / 8] >> (7 - i % 8)) & 1U);
      }
    } else {
      for (int i = 0; i < gamma_; ++i) {
        int parity = 0;
        for (int j = 0; j < n_; ++j) parity ^= rows_[i][j] & x[j];
        out.Set(i, parity != 0);
      }
    }
    return HashValue(std::move(out));
  }

  int n() const { return n_; }
  int gamma() const { return gamma_; }
  HashBackend backend() const { return backend_; }
  const std::vector<BitVector>& matrix() const { return rows_; }

  Json ToJson() const {
    Json j;
    j["backend"] = HashBackendName(backend_);
    j["n"] = n_;
    j["gamma"] = gamma_;
    if (backend_ == HashBackend::kToyLinear) {
      Json rows = Json::array();
      for (const BitVector& row : rows_) rows.push_back(row.ToString());
      j["matrix"] = std::move(rows);
    }
    return j;
  }

  static KeylessHash FromJson(const Json& j) {
    const HashBackend backend = ParseHashBackend(j.at("backend").get<std::string>());
    if (backend == HashBackend::kTruncatedDigest) {
      return TruncatedDigest(j.at("n").get<int>(), j.at("gamma").get<int>());
    }
    std::vector<BitVector> rows;
    for (const auto& row : j.at("matrix")) {
      rows.push_back(BitVector::FromString(row.get<std::string>()));
    }
    return WithMatrix(std::move(rows));
  }

  friend bool operator==(const KeylessHash& a, const KeylessHash& b) {
    return a.n_ == b.n_ && a.gamma_ == b.gamma_ && a.backend_ == b.backend_ &&
           a.rows_ == b.rows_;
  }

 private:
  KeylessHash() = default;

  static void CheckShape(int n, int gamma) {
    if (n < 1 || gamma < 1 || gamma > n) {
      throw Error(ErrorCode::kParameter,
                  "hash shape needs 1 <= gamma <= n, got n=" + std::to_string(n) +
                      " gamma=" + std::to_string(gamma));
    }
  }

  static int Rank(std::vector<BitVector> rows) {
    int rank = 0;
    const int n = rows.front().size();
    for (int col = 0; col < n && rank < static_cast<int>(rows.size()); ++col) {
      int pivot = -1;
      for (int i = rank; i < static_cast<int>(rows.size()); ++i) {
        if (rows[i][col]) {
          pivot = i;
          break;
        }
      }
      if (pivot < 0) continue;
      std::swap(rows[rank], rows[pivot]);
      for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
        if (i != rank && rows[i][col]) rows[i] = rows[i].Xor(rows[rank]);
      }
      ++rank;
    }
    return rank;
  }

  int n_ = 0;
  int gamma_ = 0;
  HashBackend backend_ = HashBackend::kTruncatedDigest;
  std::uint64_t seed_ = 0;
  std::vector<BitVector> rows_;
};

inline bool Membership(const KeylessHash& h, const HashValue& upsilon,
                       const BitVector& x) {
  return h(x) == upsilon;
}

struct PreimageChoice {
  HashValue value;
  std::uint64_t preimage_size = 0;
};

// The hash value with the largest preimage; ties go to the numerically
// smallest value.
inline PreimageChoice SelectMaxPreimageValue(
    const KeylessHash& h, const Guards& guards = DefaultGuards()) {
  CheckEnumerable(h.n(), guards, "select_max_preimage_value");
  std::vector<std::uint64_t> counts(std::size_t{1} << h.gamma(), 0);
  ForEachPoint(h.n(), [&](const BitVector& x) { ++counts[h(x).ToIndex()]; });
  std::size_t best = 0;
  for (std::size_t v = 1; v < counts.size(); ++v) {
    if (counts[v] > counts[best]) best = v;
  }
  return {HashValue::FromIndex(h.gamma(), best), counts[best]};
}

// All x with H(x) = upsilon, in lexicographic order.
inline std::vector<BitVector> EnumeratePreimage(
    const KeylessHash& h, const HashValue& upsilon,
    const Guards& guards = DefaultGuards()) {
  CheckEnumerable(h.n(), guards, "preimage enumeration");
  std::vector<BitVector> out;
  ForEachPoint(h.n(), [&](const BitVector& x) {
    if (h(x) == upsilon) out.push_back(x);
  });
  return out;
}

}  // namespace cdplab

#endif  // CDPLAB_HASHING_H_
