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

#ifndef CDPLAB_OBFUSCATION_H_
#define CDPLAB_OBFUSCATION_H_

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cdplab/binomial.h"
#include "cdplab/bit_vector.h"
#include "cdplab/circuits.h"
#include "cdplab/errors.h"
#include "cdplab/hashing.h"
#include "cdplab/random.h"
#include "cdplab/randomized_response.h"

namespace cdplab {

using Coins = std::array<std::uint8_t, 16>;

inline std::string ToHex(const std::uint8_t* data, std::size_t size) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * size);
  for (std::size_t i = 0; i < size; ++i) {
    out.push_back(kDigits[data[i] >> 4]);
    out.push_back(kDigits[data[i] & 0xF]);
  }
  return out;
}

inline std::string ToHex(const Coins& coins) { return ToHex(coins.data(), coins.size()); }

// Fixed ingredients of the differing-inputs sampler. Only theta is random.
struct LdsParams {
  BitVector x;
  BitVector x_prime;
  KeylessHash hash;
  HashValue upsilon;
  double epsilon = 1.0;
  int r = 0;
  int r_tilde = 0;
};

struct SamplerOutput {
  PredicateCircuit c0;
  PredicateCircuit c1;
  BitVector theta;
};

// Rebuilds the sampler's circuits from its public coin theta.
inline SamplerOutput LdsSamplerFromTheta(const LdsParams& p, const BitVector& theta) {
  if (HammingDistance(p.x, p.x_prime) > 1) {
    throw Error(ErrorCode::kPrecondition, "sampler inputs must be adjacent");
  }
  const BitVector noisy = p.x.Xor(theta);
  return SamplerOutput{
      PredicateCircuit(p.x, p.r, noisy, p.r_tilde, p.hash, p.upsilon),
      PredicateCircuit(p.x_prime, p.r, noisy, p.r_tilde, p.hash, p.upsilon),
      theta};
}

// theta ~ RR_eps(0^n); x~ = x XOR theta. Equal x and x' are accepted as a
// degenerate case.
template <RandomBitStream G>
SamplerOutput LdsSampler(const LdsParams& p, G& rng) {
  if (HammingDistance(p.x, p.x_prime) > 1) {
    throw Error(ErrorCode::kPrecondition, "sampler inputs must be adjacent");
  }
  const BitVector theta =
      RandomizedResponse(BitVector::Zeros(p.x.size()), p.epsilon, rng);
  return LdsSamplerFromTheta(p, theta);
}

enum class ObfuscationBackend { kTransparent, kBlackbox };

inline std::string ObfuscationBackendName(ObfuscationBackend b) {
  return b == ObfuscationBackend::kTransparent ? "transparent" : "blackbox";
}

inline ObfuscationBackend ParseObfuscationBackend(const std::string& name) {
  if (name == "transparent") return ObfuscationBackend::kTransparent;
  if (name == "blackbox") return ObfuscationBackend::kBlackbox;
  throw Error(ErrorCode::kConfiguration,
              "unknown obfuscation backend '" + name + "'");
}

// Process-wide sealed store for black-box circuits, keyed by handle id.
// Insert and lookup are serialized by one mutex.
class SealedStore {
 public:
  static SealedStore& Global() {
    static SealedStore store;
    return store;
  }

  std::shared_ptr<const PredicateCircuit> Insert(const std::string& id,
                                                 const PredicateCircuit& c) {
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, inserted] = circuits_.try_emplace(id, nullptr);
    if (inserted) it->second = std::make_shared<const PredicateCircuit>(c);
    return it->second;
  }

  bool Contains(const std::string& id) const {
    std::lock_guard<std::mutex> lock(mu_);
    return circuits_.contains(id);
  }

  std::optional<bool> Evaluate(const std::string& id, const BitVector& z) const {
    std::shared_ptr<const PredicateCircuit> c;
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = circuits_.find(id);
      if (it == circuits_.end()) return std::nullopt;
      c = it->second;
    }
    return c->Evaluate(z);
  }

  std::size_t size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return circuits_.size();
  }

 private:
  SealedStore() = default;

  mutable std::mutex mu_;
  std::unordered_map<std::string, std::shared_ptr<const PredicateCircuit>> circuits_;
};

// Output of the obfuscator. A transparent handle carries its circuit; a
// black-box handle exposes only its id, dimension and an evaluation
// capability backed by the sealed store.
class ObfuscatedHandle {
 public:
  bool Evaluate(const BitVector& z) const {
    if (z.size() != n_) throw Error(ErrorCode::kDimension, "handle input length");
    return circuit_->Evaluate(z);
  }

  int dimension() const { return n_; }
  ObfuscationBackend backend() const { return backend_; }
  const std::array<std::uint8_t, 16>& id() const { return id_; }
  std::string id_hex() const { return ToHex(id_); }

  // Null for black-box handles.
  const PredicateCircuit* transparent_circuit() const {
    return backend_ == ObfuscationBackend::kTransparent ? circuit_.get() : nullptr;
  }

  Json ToJson() const {
    Json j;
    j["id"] = id_hex();
    j["n"] = n_;
    if (backend_ == ObfuscationBackend::kTransparent) {
      j["backend"] = "transparent";
      j["circuit"] = circuit_->ToJson();
    }
    return j;
  }

  std::string Bytes() const { return ToJson().dump(); }

  friend bool operator==(const ObfuscatedHandle& a, const ObfuscatedHandle& b) {
    return a.id_ == b.id_ && a.n_ == b.n_ && a.backend_ == b.backend_;
  }

 private:
  friend ObfuscatedHandle Obfuscate(const PredicateCircuit&, ObfuscationBackend,
                                    const Coins&);

  std::array<std::uint8_t, 16> id_{};
  int n_ = 0;
  ObfuscationBackend backend_ = ObfuscationBackend::kBlackbox;
  std::shared_ptr<const PredicateCircuit> circuit_;
};

// Deterministic in (c, backend, rho): the id is a digest of all three, so the
// same inputs always reproduce the same handle.
inline ObfuscatedHandle Obfuscate(const PredicateCircuit& c,
                                  ObfuscationBackend backend, const Coins& rho) {
  const std::string description = c.ToJson().dump();
  std::vector<std::uint8_t> input = {'d', 'i', 'O', '/'};
  input.insert(input.end(), rho.begin(), rho.end());
  input.push_back(backend == ObfuscationBackend::kTransparent ? 'T' : 'B');
  input.insert(input.end(), description.begin(), description.end());
  const auto digest = internal::Sha256(input);

  ObfuscatedHandle h;
  std::copy_n(digest.begin(), h.id_.size(), h.id_.begin());
  h.n_ = c.dimension();
  h.backend_ = backend;
  if (backend == ObfuscationBackend::kTransparent) {
    h.circuit_ = std::make_shared<const PredicateCircuit>(c);
  } else {
    h.circuit_ = SealedStore::Global().Insert(h.id_hex(), c);
  }
  return h;
}

// Lexicographically first y with c0(y) != c1(y).
template <Evaluable A, Evaluable B>
std::optional<BitVector> FindDifferingInput(const A& c0, const B& c1, int n,
                                            const Guards& guards = DefaultGuards()) {
  CheckEnumerable(n, guards, "find_differing_input");
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t i = 0; i < count; ++i) {
    BitVector y = BitVector::FromIndex(n, i);
    if (Evaluate(c0, y) != Evaluate(c1, y)) return y;
  }
  return std::nullopt;
}

template <Evaluable A, Evaluable B>
std::vector<BitVector> AllDifferingInputs(const A& c0, const B& c1, int n,
                                          const Guards& guards = DefaultGuards()) {
  CheckEnumerable(n, guards, "differing-input enumeration");
  std::vector<BitVector> out;
  ForEachPoint(n, [&](const BitVector& y) {
    if (Evaluate(c0, y) != Evaluate(c1, y)) out.push_back(y);
  });
  return out;
}

// Exact Pr_theta[ ||y - x~||_1 <= r~ ] with x~ = x XOR theta, theta ~ RR_eps(0^n).
// With d = ||y - x||_1 the distance is Bin(d, e^eps/(1+e^eps)) +
// Bin(n-d, 1/(1+e^eps)).
inline double FixedPointDifferingProbability(const BitVector& y, const BitVector& x,
                                             double epsilon, int r_tilde) {
  const int n = x.size();
  const int d = HammingDistance(y, x);
  if (r_tilde < 0) return 0.0;
  if (r_tilde >= n) return 1.0;
  return TwoBinomialCdf(d, RetainProbability(epsilon), n - d,
                        FlipProbability(epsilon), r_tilde);
}

}  // namespace cdplab

#endif  // CDPLAB_OBFUSCATION_H_
