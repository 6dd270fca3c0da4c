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

#ifndef CDPLAB_MECHANISMS_H_
#define CDPLAB_MECHANISMS_H_

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "cdplab/binomial.h"
#include "cdplab/bit_vector.h"
#include "cdplab/circuits.h"
#include "cdplab/errors.h"
#include "cdplab/hashing.h"
#include "cdplab/obfuscation.h"
#include "cdplab/privacy.h"
#include "cdplab/proofs.h"
#include "cdplab/random.h"
#include "cdplab/randomized_response.h"

namespace cdplab {

using MembershipPredicate = std::function<bool(const BitVector&)>;

inline MembershipPredicate HashMembership(const KeylessHash& h,
                                          const HashValue& upsilon) {
  return [h, upsilon](const BitVector& x) { return Membership(h, upsilon, x); };
}

struct MechanismConfig {
  int n = 0;
  double epsilon = 1.0;
  int r = 0;
  int r_tilde = 0;
  KeylessHash hash = KeylessHash::TruncatedDigest(1, 1);
  HashValue upsilon = HashValue::FromIndex(1, 0);
  ObfuscationBackend backend = ObfuscationBackend::kBlackbox;

  // r = floor(0.5 n^0.9), r~ = floor(n/(1+e^eps) + n^0.6).
  static MechanismConfig Default(KeylessHash hash, HashValue upsilon, double epsilon,
                                 ObfuscationBackend backend) {
    CheckEpsilon(epsilon);
    MechanismConfig c;
    c.n = hash.n();
    c.epsilon = epsilon;
    c.r = DefaultRadius(c.n);
    c.r_tilde = DefaultNoisyRadius(c.n, epsilon);
    c.upsilon = std::move(upsilon);
    c.hash = std::move(hash);
    c.backend = backend;
    return c;
  }

  int tau() const { return 2 * r; }

  RegistryConfig registry_config() const { return RegistryConfig{r, r_tilde, hash, upsilon}; }

  MembershipPredicate membership() const { return HashMembership(hash, upsilon); }

  Json ToJson() const {
    Json j;
    j["n"] = n;
    j["epsilon"] = epsilon;
    j["r"] = r;
    j["r_tilde"] = r_tilde;
    j["tau"] = tau();
    j["hash"] = hash.ToJson();
    j["upsilon"] = upsilon.ToString();
    j["backend"] = ObfuscationBackendName(backend);
    return j;
  }
};

// 1{ ||x - y||_1 <= tau or x not in R }.
inline bool UNbp(const BitVector& x, const BitVector& y, double tau,
                 const MembershipPredicate& in_r) {
  x.RequireSameSize(y);
  return HammingDistance(x, y) <= tau || !in_r(x);
}

// 1{ C(x) = 1 or x not in R }.
template <Evaluable C>
bool UEval(const BitVector& x, const C& c, const MembershipPredicate& in_r) {
  return Evaluate(c, x) || !in_r(x);
}

struct CdpOutput {
  Statement circuit;
  ProofToken proof;
};

inline bool UVlds(const BitVector& x, const CdpOutput& out,
                  const MembershipPredicate& in_r, const ProofRegistry& verifier) {
  return verifier.Verify(out.circuit, out.proof) && UEval(x, out.circuit, in_r);
}

inline PredicateCircuit BallCircuit(const MechanismConfig& cfg, const BitVector& x,
                                    const BitVector& x_tilde) {
  return PredicateCircuit(x, cfg.r, x_tilde, cfg.r_tilde, cfg.hash, cfg.upsilon);
}

struct DioAuxOutput {
  ObfuscatedHandle handle;
  BitVector x_tilde;
  Coins rho;
};

template <RandomBitStream G>
DioAuxOutput MDioAux(const BitVector& x, const MechanismConfig& cfg, G& rng) {
  if (x.size() != cfg.n) {
    throw Error(ErrorCode::kDimension, "input length differs from config n");
  }
  BitVector x_tilde = RandomizedResponse(x, cfg.epsilon, rng);
  const Coins rho = RandomBytes16(rng);
  ObfuscatedHandle handle = Obfuscate(BallCircuit(cfg, x, x_tilde), cfg.backend, rho);
  return {std::move(handle), std::move(x_tilde), rho};
}

template <RandomBitStream G>
ObfuscatedHandle MDio(const BitVector& x, const MechanismConfig& cfg, G& rng) {
  return MDioAux(x, cfg, rng).handle;
}

// Two independent M_diO^aux runs, ANDed, with a proof from the chosen
// operand's witness (operand 0 in the honest mechanism).
template <RandomBitStream G>
CdpOutput MCdp(const BitVector& x, const MechanismConfig& cfg, ProofRegistry& registry,
               G& rng, int witness_operand = 0) {
  RandomStream stream0 = SplitStream(rng);
  RandomStream stream1 = SplitStream(rng);
  RandomStream prover_stream = SplitStream(rng);
  DioAuxOutput first = MDioAux(x, cfg, stream0);
  DioAuxOutput second = MDioAux(x, cfg, stream1);
  const DioAuxOutput& opened = witness_operand == 0 ? first : second;
  Witness w{witness_operand, x, opened.x_tilde, opened.rho};
  Statement circuit(std::move(first.handle), std::move(second.handle));
  ProofToken proof = registry.Prove(circuit, w, prover_stream);
  return CdpOutput{std::move(circuit), proof};
}

// Pr[Bin(n, 1/(1+e^eps)) <= r~]: usefulness of M_diO on any x in R.
inline double MDioUsefulness(int n, double epsilon, int r_tilde) {
  return BinomialCdf(n, FlipProbability(epsilon), r_tilde);
}

inline double MDioUsefulness(const MechanismConfig& cfg) {
  return MDioUsefulness(cfg.n, cfg.epsilon, cfg.r_tilde);
}

using NbpMechanism = std::function<BitVector(const BitVector&, RandomStream&)>;
using VldsMechanism = std::function<CdpOutput(const BitVector&, RandomStream&)>;

// Post-processing of one VLDS output: lexicographically first accepted point
// when the proof verifies, otherwise 0^n.
inline BitVector NbpFromVldsOutput(const CdpOutput& out, const ProofRegistry& verifier,
                                   int n, const Guards& guards = DefaultGuards()) {
  if (verifier.Verify(out.circuit, out.proof)) {
    if (auto y = LexFirstAccepted(out.circuit, n, guards)) return *y;
  }
  return BitVector::Zeros(n);
}

// Reduction from a VLDS mechanism to a nearby-point mechanism. The result
// enumerates the cube, so n is bounded by the enumeration guard.
inline NbpMechanism VldsToNbp(VldsMechanism m, const ProofRegistry& verifier, int n,
                              const Guards& guards = DefaultGuards()) {
  CheckEnumerable(n, guards, "vlds_to_nbp");
  return [m = std::move(m), &verifier, n, guards](const BitVector& x,
                                                  RandomStream& rng) {
    return NbpFromVldsOutput(m(x, rng), verifier, n, guards);
  };
}

}  // namespace cdplab

#endif  // CDPLAB_MECHANISMS_H_
