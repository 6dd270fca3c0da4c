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

#ifndef CDPLAB_PROOFS_H_
#define CDPLAB_PROOFS_H_

#include <array>
#include <cstdint>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cdplab/circuits.h"
#include "cdplab/errors.h"
#include "cdplab/hashing.h"
#include "cdplab/obfuscation.h"
#include "cdplab/random.h"

namespace cdplab {

// Claim: at least one operand of left AND right is the obfuscation of a
// ball-intersection circuit built with the registry's ambient parameters.
using Statement = AndCircuit<ObfuscatedHandle, ObfuscatedHandle>;

struct Witness {
  int b = 0;  // which operand the witness opens
  BitVector x;
  BitVector x_tilde;
  Coins rho{};
};

struct ProofToken {
  std::array<std::uint8_t, 16> bytes{};

  std::string ToHex() const { return cdplab::ToHex(bytes.data(), bytes.size()); }

  static ProofToken FromHex(const std::string& hex) {
    if (hex.size() != 32) {
      throw Error(ErrorCode::kParameter, "proof token must be 32 hex chars");
    }
    ProofToken t;
    for (std::size_t i = 0; i < 16; ++i) {
      t.bytes[i] = static_cast<std::uint8_t>(std::stoul(hex.substr(2 * i, 2), nullptr, 16));
    }
    return t;
  }

  friend bool operator==(const ProofToken&, const ProofToken&) = default;
};

// Parameters every statement in the language shares.
struct RegistryConfig {
  int r = 0;
  int r_tilde = 0;
  KeylessHash hash = KeylessHash::TruncatedDigest(1, 1);
  HashValue upsilon = HashValue::FromIndex(1, 0);

  Json ToJson() const {
    Json j;
    j["r"] = r;
    j["r_tilde"] = r_tilde;
    j["hash"] = hash.ToJson();
    j["upsilon"] = upsilon.ToString();
    return j;
  }

  static RegistryConfig FromJson(const Json& j) {
    RegistryConfig c;
    c.r = j.at("r").get<int>();
    c.r_tilde = j.at("r_tilde").get<int>();
    c.hash = KeylessHash::FromJson(j.at("hash"));
    c.upsilon = HashValue(BitVector::FromString(j.at("upsilon").get<std::string>()));
    return c;
  }
};

inline std::string StatementDigest(const Statement& s) {
  std::vector<std::uint8_t> input = {'L', '^', '/'};
  input.insert(input.end(), s.left().id().begin(), s.left().id().end());
  input.insert(input.end(), s.right().id().begin(), s.right().id().end());
  const auto digest = internal::Sha256(input);
  return ToHex(digest.data(), digest.size());
}

// Ideal non-interactive witness-indistinguishable proof system.
//
// Prove() checks the witness by re-deriving the opened operand, then records
// (statement digest, fresh token). Tokens come from the caller's stream alone,
// so they carry no information about which witness was used. Verify() accepts
// exactly the recorded pairs.
class ProofRegistry {
 public:
  explicit ProofRegistry(RegistryConfig config) : config_(std::move(config)) {}

  ProofRegistry(const ProofRegistry& other)
      : config_(other.config_), entries_(other.Snapshot()) {}

  const RegistryConfig& config() const { return config_; }

  bool WitnessValid(const Statement& s, const Witness& w) const {
    if (w.b != 0 && w.b != 1) return false;
    const ObfuscatedHandle& opened = w.b == 0 ? s.left() : s.right();
    if (w.x.size() != opened.dimension() || w.x_tilde.size() != opened.dimension() ||
        config_.hash.n() != opened.dimension()) {
      return false;
    }
    const PredicateCircuit rebuilt(w.x, config_.r, w.x_tilde, config_.r_tilde,
                                   config_.hash, config_.upsilon);
    return Obfuscate(rebuilt, opened.backend(), w.rho) == opened;
  }

  template <RandomBitStream G>
  ProofToken Prove(const Statement& s, const Witness& w, G& rng) {
    if (!WitnessValid(s, w)) {
      throw Error(ErrorCode::kWitness, "witness does not open the statement");
    }
    ProofToken token{RandomBytes16(rng)};
    std::lock_guard<std::mutex> lock(mu_);
    entries_[StatementDigest(s)].insert(token.ToHex());
    return token;
  }

  bool Verify(const Statement& s, const ProofToken& p) const {
    const std::string digest = StatementDigest(s);
    std::lock_guard<std::mutex> lock(mu_);
    auto it = entries_.find(digest);
    return it != entries_.end() && it->second.contains(p.ToHex());
  }

  std::size_t size() const {
    std::lock_guard<std::mutex> lock(mu_);
    std::size_t total = 0;
    for (const auto& [digest, tokens] : entries_) total += tokens.size();
    return total;
  }

  Json ToJson() const {
    Json j;
    j["config"] = config_.ToJson();
    Json entries = Json::array();
    for (const auto& [digest, tokens] : Snapshot()) {
      for (const std::string& token : tokens) {
        entries.push_back(Json{{"statement", digest}, {"token", token}});
      }
    }
    j["entries"] = std::move(entries);
    return j;
  }

  static ProofRegistry FromJson(const Json& j) {
    ProofRegistry registry(RegistryConfig::FromJson(j.at("config")));
    for (const auto& e : j.at("entries")) {
      registry.entries_[e.at("statement").get<std::string>()].insert(
          e.at("token").get<std::string>());
    }
    return registry;
  }

  void Save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::kConfiguration, "cannot write " + path);
    out << ToJson().dump(2) << "\n";
  }

  static ProofRegistry Load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::kConfiguration, "cannot read " + path);
    return FromJson(Json::parse(in));
  }

 private:
  std::map<std::string, std::set<std::string>> Snapshot() const {
    std::lock_guard<std::mutex> lock(mu_);
    return entries_;
  }

  RegistryConfig config_;
  mutable std::mutex mu_;
  std::map<std::string, std::set<std::string>> entries_;
};

}  // namespace cdplab

#endif  // CDPLAB_PROOFS_H_
