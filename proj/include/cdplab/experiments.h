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

#ifndef CDPLAB_EXPERIMENTS_H_
#define CDPLAB_EXPERIMENTS_H_

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cdplab/audit.h"
#include "cdplab/binomial.h"
#include "cdplab/bit_vector.h"
#include "cdplab/circuits.h"
#include "cdplab/collision.h"
#include "cdplab/errors.h"
#include "cdplab/hashing.h"
#include "cdplab/lower_bounds.h"
#include "cdplab/mechanisms.h"
#include "cdplab/obfuscation.h"
#include "cdplab/privacy.h"
#include "cdplab/proofs.h"
#include "cdplab/random.h"
#include "cdplab/report.h"
#include "cdplab/tuning.h"

#ifndef CDPLAB_VERSION
#define CDPLAB_VERSION "0.1.0"
#endif

namespace cdplab {

inline std::string Version() { return CDPLAB_VERSION; }

// Flat key/value experiment settings. Every key has a default; unknown keys
// are rejected so typos surface as configuration errors.
class ExperimentConfig {
 public:
  ExperimentConfig() : values_(Defaults()) {}

  static const std::map<std::string, std::string>& Defaults() {
    static const std::map<std::string, std::string> kDefaults = {
        {"n", "12"},
        {"epsilon", "1"},
        {"gamma_bits", "0"},  // 0: ceil(log2(n)^1.5)
        {"hash_backend", "truncated-digest"},
        {"obfuscation_backend", "blackbox"},
        {"seed", "1"},
        {"trials", "2000"},
        {"out", ""},
        {"format", "json"},
        {"registry_path", ""},
        {"collide_k", "5"},
        {"collide_budget", "10000"},
        {"collide_finder", "lex-first"},
        {"collide_x", ""},  // empty: adjacent pair with the most separating points
        {"collide_flip", "-1"},  // with collide_x: coordinate flipped for x'; -1: last
        {"boost_base", "rr"},
        {"boost_tau", "2"},
        {"boost_exponent", "1"},
        {"audit_mechanism", "rr"},
        {"audit_x", ""},  // empty: 0^n
        {"audit_flip", "0"},
        {"audit_epsilon_grid", "0,0.25,0.5,0.75,1,1.5,2"},  // multiples of epsilon
        {"lb_n", "4,6,8"},
        {"lb_epsilon", "0.5,1,2"},
        {"lb_d", "0,1"},
        {"lb_delta", "0"},
        {"lb_block_size", "2"},
        {"lb_block_fraction", "0.25"},
        {"lb_packing_n_max", "8"},
        {"lb_matching_n_max", "6"},
        {"lb_matching_samples", "200"},
        {"guard_max_enumeration_n", "24"},
        {"guard_max_graph_n", "16"},
        {"guard_max_independent_set_vertices", "64"},
        {"guard_max_matching_vertices", "16384"},
    };
    return kDefaults;
  }

  void Set(const std::string& key, const std::string& value) {
    if (!Defaults().contains(key)) {
      throw Error(ErrorCode::kConfiguration, "unknown config key '" + key + "'");
    }
    values_[key] = value;
  }

  // Lines of the form `key = value`; `#` starts a comment.
  void MergeText(const std::string& text, const std::string& origin = "config") {
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
      ++number;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      line = Trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        throw Error(ErrorCode::kConfiguration,
                    origin + ":" + std::to_string(number) + ": expected key = value");
      }
      Set(Trim(line.substr(0, eq)), Trim(line.substr(eq + 1)));
    }
  }

  void MergeFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::kConfiguration, "cannot read config file " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    MergeText(buffer.str(), path);
  }

  const std::string& Get(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) {
      throw Error(ErrorCode::kConfiguration, "unknown config key '" + key + "'");
    }
    return it->second;
  }

  long long GetInt(const std::string& key) const {
    const std::string& text = Get(key);
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw Error(ErrorCode::kConfiguration, key + " must be an integer, got '" + text + "'");
    }
    return value;
  }

  std::uint64_t GetU64(const std::string& key) const {
    const std::string& text = Get(key);
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw Error(ErrorCode::kConfiguration,
                  key + " must be an unsigned integer, got '" + text + "'");
    }
    return value;
  }

  double GetDouble(const std::string& key) const { return ParseDouble(key, Get(key)); }

  std::vector<double> GetDoubleList(const std::string& key) const {
    std::vector<double> out;
    for (const std::string& item : Split(Get(key))) out.push_back(ParseDouble(key, item));
    return out;
  }

  std::vector<int> GetIntList(const std::string& key) const {
    std::vector<int> out;
    for (const std::string& item : Split(Get(key))) {
      int value = 0;
      const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
      if (ec != std::errc() || ptr != item.data() + item.size()) {
        throw Error(ErrorCode::kConfiguration, key + ": bad integer '" + item + "'");
      }
      out.push_back(value);
    }
    return out;
  }

  Guards guards() const {
    Guards g;
    g.max_enumeration_n = static_cast<int>(GetInt("guard_max_enumeration_n"));
    g.max_graph_n = static_cast<int>(GetInt("guard_max_graph_n"));
    g.max_independent_set_vertices = GetU64("guard_max_independent_set_vertices");
    g.max_matching_vertices = GetU64("guard_max_matching_vertices");
    return g;
  }

  Json ToJson() const {
    Json j = Json::object();
    for (const auto& [key, value] : values_) j[key] = value;
    return j;
  }

 private:
  static std::string Trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
  }

  static std::vector<std::string> Split(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
      item = Trim(item);
      if (!item.empty()) out.push_back(item);
    }
    return out;
  }

  static double ParseDouble(const std::string& key, const std::string& text) {
    try {
      std::size_t used = 0;
      const double value = std::stod(text, &used);
      if (used == text.size() && std::isfinite(value)) return value;
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::kConfiguration, key + " must be a real number, got '" + text + "'");
  }

  std::map<std::string, std::string> values_;
};

inline Json GuardsToJson(const Guards& g) {
  return Json{{"max_enumeration_n", g.max_enumeration_n},
              {"max_graph_n", g.max_graph_n},
              {"max_independent_set_vertices", g.max_independent_set_vertices},
              {"max_matching_vertices", g.max_matching_vertices}};
}

struct CommandResult {
  Json report;
  std::vector<ClaimReport> claims;
  ClaimStatus status = ClaimStatus::kPass;
};

inline int ExitCodeFor(ClaimStatus status) {
  switch (status) {
    case ClaimStatus::kViolation:
      return 1;
    case ClaimStatus::kInconclusive:
      return 2;
    default:
      return 0;
  }
}

namespace internal {

inline CommandResult Finish(const std::string& command, const ExperimentConfig& config,
                            Json results, std::vector<ClaimReport> claims) {
  CommandResult out;
  Json claim_json = Json::array();
  for (const ClaimReport& c : claims) {
    out.status = CombineStatus(out.status, c.status);
    claim_json.push_back(c.ToJson());
  }
  out.report["command"] = command;
  out.report["version"] = Version();
  out.report["seed"] = config.GetU64("seed");
  // The destination path does not affect results and stays out of the report.
  Json config_json = config.ToJson();
  config_json.erase("out");
  out.report["config"] = std::move(config_json);
  out.report["guards"] = GuardsToJson(config.guards());
  out.report["results"] = std::move(results);
  out.report["claims"] = std::move(claim_json);
  out.report["status"] = ClaimStatusName(out.status);
  out.claims = std::move(claims);
  return out;
}

// Two-sided check of an empirical frequency against an exact probability at
// three binomial standard errors.
inline ClaimReport FrequencyClaim(const std::string& name, std::uint64_t successes,
                                  std::uint64_t trials, double expected,
                                  std::uint64_t seed) {
  ClaimReport c;
  c.claim = name;
  c.exact = false;
  c.trials = trials;
  c.seed = seed;
  c.lhs = static_cast<double>(successes) / static_cast<double>(trials);
  c.rhs = expected;
  const double sigma = std::sqrt(expected * (1.0 - expected) / static_cast<double>(trials));
  c.details["standard_error"] = sigma;
  c.details["allowed_deviation"] = 3.0 * sigma;
  c.status = std::abs(c.lhs - expected) <= 3.0 * sigma + 1e-12 ? ClaimStatus::kPass
                                                               : ClaimStatus::kViolation;
  return c;
}

struct HashSetup {
  KeylessHash hash;
  PreimageChoice choice;
};

inline HashSetup BuildHash(const ExperimentConfig& config, const RandomStream& root) {
  const int n = static_cast<int>(config.GetInt("n"));
  int gamma = static_cast<int>(config.GetInt("gamma_bits"));
  if (gamma == 0) gamma = DefaultGamma(n);
  RandomStream hash_stream = root.Derive("hash");
  KeylessHash hash = KeylessHash::Make(ParseHashBackend(config.Get("hash_backend")), n,
                                       gamma, hash_stream());
  PreimageChoice choice = SelectMaxPreimageValue(hash, config.guards());
  return {std::move(hash), std::move(choice)};
}

inline Json HashSummary(const HashSetup& setup) {
  return Json{{"hash", setup.hash.ToJson()},
              {"upsilon", setup.choice.value.ToString()},
              {"preimage_size", setup.choice.preimage_size}};
}

inline ProofRegistry OpenRegistry(const ExperimentConfig& config, const RegistryConfig& rc) {
  const std::string& path = config.Get("registry_path");
  if (path.empty() || !std::filesystem::exists(path)) return ProofRegistry(rc);
  ProofRegistry loaded = ProofRegistry::Load(path);
  if (loaded.config().ToJson() != rc.ToJson()) {
    throw Error(ErrorCode::kConfiguration,
                "registry file " + path + " was built for different parameters");
  }
  return loaded;
}

inline void SaveRegistry(const ExperimentConfig& config, const ProofRegistry& registry) {
  const std::string& path = config.Get("registry_path");
  if (!path.empty()) registry.Save(path);
}

inline BitVector PointOrDefault(const std::string& text, const BitVector& fallback) {
  if (text.empty()) return fallback;
  BitVector x = BitVector::FromString(text);
  if (x.size() != fallback.size()) {
    throw Error(ErrorCode::kConfiguration, "point '" + text + "' has the wrong length");
  }
  return x;
}

inline int FlipCoordinate(long long flip, int n) {
  if (flip < 0) flip += n;
  if (flip < 0 || flip >= n) throw Error(ErrorCode::kConfiguration, "flip coordinate out of range");
  return static_cast<int>(flip);
}

}  // namespace internal

// Runs m_cdp on points drawn uniformly from R = H^{-1}(upsilon) and compares
// empirical usefulness of the first operand (m_dio) and of the whole output
// (m_cdp) with the exact binomial oracle.
inline CommandResult CmdMechRun(const ExperimentConfig& config) {
  const RandomStream root(config.GetU64("seed"));
  const internal::HashSetup setup = internal::BuildHash(config, root);
  const MechanismConfig cfg =
      MechanismConfig::Default(setup.hash, setup.choice.value, config.GetDouble("epsilon"),
                               ParseObfuscationBackend(config.Get("obfuscation_backend")));
  const std::vector<BitVector> region =
      EnumeratePreimage(setup.hash, setup.choice.value, config.guards());
  ProofRegistry registry = internal::OpenRegistry(config, cfg.registry_config());
  const MembershipPredicate in_r = cfg.membership();
  const std::uint64_t trials = config.GetU64("trials");
  const double dio_oracle = MDioUsefulness(cfg);

  Json results;
  results["mechanism"] = cfg.ToJson();
  results["region"] = internal::HashSummary(setup);
  results["oracle"] = {{"m_dio_usefulness", dio_oracle},
                       {"m_cdp_usefulness", dio_oracle * dio_oracle}};
  results["declared_privacy"] = {{"epsilon", 2.0 * cfg.epsilon},
                                 {"delta", 0.0},
                                 {"notion", "computational"}};
  std::vector<ClaimReport> claims;
  if (trials > 0) {
    RandomStream rng = root.Derive("mech-run/trials");
    std::uint64_t dio_useful = 0, cdp_useful = 0, verified = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
      const BitVector& x = region[UniformBelow(rng, region.size())];
      RandomStream trial = SplitStream(rng);
      const CdpOutput out = MCdp(x, cfg, registry, trial);
      verified += registry.Verify(out.circuit, out.proof);
      dio_useful += UEval(x, out.circuit.left(), in_r);
      cdp_useful += UVlds(x, out, in_r, registry);
    }
    const std::uint64_t seed = root.Derive("mech-run/trials").seed();
    results["empirical"] = {{"trials", trials},
                            {"verified", verified},
                            {"m_dio_useful", dio_useful},
                            {"m_cdp_useful", cdp_useful}};
    claims.push_back(internal::FrequencyClaim("m_dio-usefulness", dio_useful, trials,
                                              dio_oracle, seed));
    claims.push_back(internal::FrequencyClaim("m_cdp-usefulness", cdp_useful, trials,
                                              dio_oracle * dio_oracle, seed));
    ClaimReport completeness;
    completeness.claim = "verifier-completeness";
    completeness.lhs = static_cast<double>(verified);
    completeness.rhs = static_cast<double>(trials);
    completeness.trials = trials;
    completeness.seed = seed;
    completeness.status = verified == trials ? ClaimStatus::kPass : ClaimStatus::kViolation;
    claims.push_back(completeness);
  }
  internal::SaveRegistry(config, registry);
  return internal::Finish("mech-run", config, std::move(results), std::move(claims));
}

// Each-block and block-decomposition cells for randomized response over the
// full cube, followed by the packing and matching sweeps.
inline CommandResult CmdLowerBound(const ExperimentConfig& config) {
  const Guards guards = config.guards();
  const std::uint64_t seed = config.GetU64("seed");
  const RandomStream root(seed);
  const double delta = config.GetDouble("lb_delta");
  const int block_size = static_cast<int>(config.GetInt("lb_block_size"));
  const double zeta = config.GetDouble("lb_block_fraction");
  const std::uint64_t trials = config.GetU64("trials");
  const MembershipPredicate everything = [](const BitVector&) { return true; };
  std::vector<ClaimReport> claims;
  for (int n : config.GetIntList("lb_n")) {
    for (double eps : config.GetDoubleList("lb_epsilon")) {
      const AnalyzedMechanism rr = RandomizedResponseMechanism(n, eps);
      for (int d : config.GetIntList("lb_d")) {
        const std::string cell =
            "n=" + std::to_string(n) + "/eps=" + Json(eps).dump() + "/d=" + std::to_string(d);
        const std::uint64_t cell_seed = root.Derive("lower-bound/" + cell).seed();
        claims.push_back(VerifyEachBlock(rr, everything, eps, delta, d, trials, cell_seed,
                                         guards));
        if (n % block_size != 0) {
          throw Error(ErrorCode::kConfiguration,
                      "lb_block_size must divide every n in lb_n");
        }
        const BlockScheme scheme{n, block_size, n / block_size};
        claims.push_back(VerifyBlockDecomposition(rr, everything, scheme, eps, delta, d,
                                                  zeta, trials, cell_seed, guards));
      }
    }
  }
  for (int n = 1; n <= config.GetInt("lb_packing_n_max"); ++n) {
    for (int d = 0; 2 * d + 1 <= n; ++d) claims.push_back(VerifyPackingBound(n, d, guards));
  }
  const int samples = static_cast<int>(config.GetInt("lb_matching_samples"));
  for (int n = 1; n <= config.GetInt("lb_matching_n_max"); ++n) {
    for (int d = 0; d <= n; ++d) {
      const std::string cell = "matching/n=" + std::to_string(n) + "/d=" + std::to_string(d);
      claims.push_back(
          VerifyMatchingBound(n, d, samples, root.Derive(cell).seed(), guards));
    }
  }
  Json results;
  std::size_t vacuous = 0;
  for (const ClaimReport& c : claims) vacuous += c.vacuous;
  results["cells"] = claims.size();
  results["vacuous_cells"] = vacuous;
  return internal::Finish("lower-bound", config, std::move(results), std::move(claims));
}

// Multi-collision harvest against the differing-inputs sampler at (x, x').
inline CommandResult CmdCollide(const ExperimentConfig& config) {
  const RandomStream root(config.GetU64("seed"));
  const internal::HashSetup setup = internal::BuildHash(config, root);
  const Guards guards = config.guards();
  const MechanismConfig cfg =
      MechanismConfig::Default(setup.hash, setup.choice.value, config.GetDouble("epsilon"),
                               ObfuscationBackend::kTransparent);
  const std::vector<BitVector> region = EnumeratePreimage(setup.hash, setup.choice.value, guards);
  // Without an explicit x the adversary picks its strongest pair.
  BitVector x;
  int flip = 0;
  if (config.Get("collide_x").empty()) {
    std::tie(x, flip) = RichestAdjacentPair(region, cfg.r);
  } else {
    x = internal::PointOrDefault(config.Get("collide_x"), region.front());
    flip = internal::FlipCoordinate(config.GetInt("collide_flip"), cfg.n);
  }
  const LdsParams params{x, x.WithFlipped(flip), cfg.hash, cfg.upsilon,
                         cfg.epsilon, cfg.r, cfg.r_tilde};
  const std::string finder_name = config.Get("collide_finder");
  DifferingInputFinder finder;
  if (finder_name == "lex-first") {
    finder = LexFirstFinder(guards);
  } else if (finder_name == "uniform") {
    finder = UniformFinder(guards);
  } else {
    throw Error(ErrorCode::kConfiguration, "collide_finder must be lex-first or uniform");
  }
  const long long target = config.GetInt("collide_k");
  const std::uint64_t budget = config.GetU64("collide_budget");
  RandomStream rng = root.Derive("collide/harvest");
  const CollisionHarvest harvest =
      CollisionAdversary(params, finder, static_cast<int>(target), budget, rng);

  bool hashes_match = true;
  for (const BitVector& y : harvest.found) hashes_match = hashes_match && cfg.hash(y) == cfg.upsilon;
  Json results;
  results["region"] = internal::HashSummary(setup);
  results["x"] = params.x.ToString();
  results["x_prime"] = params.x_prime.ToString();
  results["separating_points"] = SeparatingPoints(region, params.x, params.x_prime, cfg.r);
  results["r"] = cfg.r;
  results["r_tilde"] = cfg.r_tilde;
  results["finder"] = finder_name;
  results["harvest"] = harvest.ToJson();
  results["all_found_hash_to_upsilon"] = hashes_match;

  ClaimReport hash_claim;
  hash_claim.claim = "harvest-hashes-to-upsilon";
  hash_claim.lhs = static_cast<double>(harvest.found.size());
  hash_claim.rhs = static_cast<double>(harvest.found.size());
  hash_claim.trials = harvest.iterations_used;
  hash_claim.seed = rng.seed();
  hash_claim.status = hashes_match ? ClaimStatus::kPass : ClaimStatus::kViolation;
  // Harvest failure is an observation about the hash, not a broken claim.
  return internal::Finish("collide", config, std::move(results), {hash_claim});
}

// Wraps a weak nearby-point mechanism in the tuning-based booster and reports
// usefulness before and after, the plan's event bounds and trace checks.
inline CommandResult CmdBoost(const ExperimentConfig& config) {
  const RandomStream root(config.GetU64("seed"));
  const Guards guards = config.guards();
  const int n = static_cast<int>(config.GetInt("n"));
  const double eps = config.GetDouble("epsilon");
  const double exponent = config.GetDouble("boost_exponent");
  const std::string base_name = config.Get("boost_base");
  const std::uint64_t trials = config.GetU64("trials");

  NbpMechanism base;
  double tau = 0.0, alpha = 0.0;
  PrivacyParams base_privacy(eps, 0.0);
  std::vector<BitVector> region;
  Json base_json;
  std::optional<ProofRegistry> registry;
  std::optional<MechanismConfig> cdp_cfg;
  if (base_name == "rr") {
    tau = config.GetDouble("boost_tau");
    alpha = BinomialCdf(n, FlipProbability(eps), static_cast<int>(std::floor(tau)));
    base = [eps](const BitVector& x, RandomStream& rng) { return RandomizedResponse(x, eps, rng); };
    if (n > 20) throw Error(ErrorCode::kCapacity, "boost with rr base needs n <= 20");
    region.reserve(std::size_t{1} << n);
    ForEachPoint(n, [&](const BitVector& x) { region.push_back(x); });
    base_json = {{"name", "randomized-response"}, {"region", "full cube"}};
  } else if (base_name == "cdp-nbp") {
    const internal::HashSetup setup = internal::BuildHash(config, root);
    cdp_cfg = MechanismConfig::Default(setup.hash, setup.choice.value, eps,
                                       ParseObfuscationBackend(config.Get("obfuscation_backend")));
    registry.emplace(internal::OpenRegistry(config, cdp_cfg->registry_config()));
    tau = cdp_cfg->tau();
    const double f = MDioUsefulness(*cdp_cfg);
    alpha = f * f;  // u_vlds = 1 forces u_nbp = 1 at tau = 2r
    base_privacy = PrivacyParams(2.0 * eps, 0.0);
    region = EnumeratePreimage(setup.hash, setup.choice.value, guards);
    ProofRegistry* reg = &*registry;
    const MechanismConfig mc = *cdp_cfg;
    VldsMechanism vlds = [mc, reg](const BitVector& x, RandomStream& rng) {
      return MCdp(x, mc, *reg, rng);
    };
    base = VldsToNbp(std::move(vlds), *reg, n, guards);
    base_json = {{"name", "m_cdp then vlds_to_nbp"},
                 {"mechanism", cdp_cfg->ToJson()},
                 {"region", internal::HashSummary(setup)}};
  } else {
    throw Error(ErrorCode::kConfiguration, "boost_base must be rr or cdp-nbp");
  }
  const BoostPlan plan = PlanBoost(base_privacy, alpha, tau, exponent, n);

  RandomStream rng = root.Derive("boost/trials");
  std::uint64_t before_useful = 0, before_useful_wide = 0, after_useful = 0;
  std::uint64_t bottoms = 0, early = 0, trace_mismatch = 0, threshold_violations = 0;
  std::uint64_t base_runs = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const BitVector& x = region[UniformBelow(rng, region.size())];
    RandomStream before_stream = SplitStream(rng);
    RandomStream after_stream = SplitStream(rng);
    const BitVector y = base(x, before_stream);
    before_useful += HammingDistance(x, y) <= plan.tau;
    before_useful_wide += HammingDistance(x, y) <= plan.tau_prime;
    const BoostRun run = RunBoost(base, plan, x, after_stream);
    base_runs += run.tuning.trace.size();
    after_useful += HammingDistance(x, run.output) <= plan.tau_prime;
    bottoms += run.bottom;
    early += run.tuning.stopped_early;
    const bool exhausted = !run.tuning.stopped_early &&
                           run.tuning.trace.size() == plan.steps && run.bottom;
    if (run.bottom != (run.tuning.stopped_early || exhausted)) ++trace_mismatch;
    if (run.bottom && run.output != BitVector::Zeros(n)) ++trace_mismatch;
    if (!run.bottom) {
      const ScoredCandidate& last = run.tuning.trace.back();
      if (last.score > plan.threshold) ++trace_mismatch;
      if (std::abs(last.noise) <= plan.margin && HammingDistance(x, run.output) > plan.tau_prime) {
        ++threshold_violations;
      }
    }
  }
  if (registry) internal::SaveRegistry(config, *registry);
  const std::uint64_t seed = root.Derive("boost/trials").seed();

  Json results;
  results["base"] = base_json;
  results["base_declared_privacy"] = {{"epsilon", base_privacy.epsilon()},
                                      {"delta", base_privacy.delta()}};
  results["base_alpha"] = alpha;
  results["plan"] = plan.ToJson();
  results["empirical"] = {{"trials", trials},
                          {"before_useful_at_tau", before_useful},
                          {"before_useful_at_tau_prime", before_useful_wide},
                          {"after_useful_at_tau_prime", after_useful},
                          {"bottom_outputs", bottoms},
                          {"stopped_early", early},
                          {"base_runs", base_runs}};

  std::vector<ClaimReport> claims;
  ClaimReport events;
  events.claim = "boost-event-bounds";
  events.lhs = plan.event_bound_sum();
  events.rhs = plan.failure_target();
  events.details = {{"E1", plan.event1_bound}, {"E2", plan.event2_bound}, {"E3", plan.event3_bound}};
  events.status = events.lhs <= events.rhs ? ClaimStatus::kPass : ClaimStatus::kViolation;
  claims.push_back(events);

  ClaimReport label;
  label.claim = "boost-declared-epsilon";
  label.lhs = plan.declared_privacy.epsilon();
  label.rhs = 2.0 * plan.base_privacy.epsilon() + 1.0;
  label.details["declared_delta"] = plan.declared_privacy.delta();
  label.status = std::abs(label.lhs - label.rhs) <= 1e-12 ? ClaimStatus::kPass
                                                          : ClaimStatus::kViolation;
  claims.push_back(label);

  ClaimReport trace;
  trace.claim = "boost-trace-consistency";
  trace.lhs = static_cast<double>(trace_mismatch);
  trace.rhs = 0.0;
  trace.trials = trials;
  trace.seed = seed;
  trace.status = trace_mismatch == 0 ? ClaimStatus::kPass : ClaimStatus::kViolation;
  claims.push_back(trace);

  ClaimReport threshold;
  threshold.claim = "boost-threshold-distance";
  threshold.lhs = static_cast<double>(threshold_violations);
  threshold.rhs = 0.0;
  threshold.trials = trials;
  threshold.seed = seed;
  threshold.status = threshold_violations == 0 ? ClaimStatus::kPass : ClaimStatus::kViolation;
  claims.push_back(threshold);

  if (trials > 0) {
    ClaimReport useful;
    useful.claim = "boost-usefulness";
    useful.exact = false;
    useful.trials = trials;
    useful.seed = seed;
    useful.lhs = static_cast<double>(after_useful) / static_cast<double>(trials);
    useful.rhs = 1.0 - 1.0 / std::pow(static_cast<double>(n), exponent);
    const auto [low, high] = WilsonInterval(after_useful, trials);
    useful.details["interval"] = Json::array({low, high});
    if (low >= useful.rhs) {
      useful.status = ClaimStatus::kPass;
    } else if (high < useful.rhs) {
      useful.status = ClaimStatus::kViolation;
    } else {
      useful.status = ClaimStatus::kInconclusive;
    }
    claims.push_back(useful);
  }
  return internal::Finish("boost", config, std::move(results), std::move(claims));
}

// Hockey-stick curve for one adjacent pair and the privacy-label check.
inline CommandResult CmdAudit(const ExperimentConfig& config) {
  const RandomStream root(config.GetU64("seed"));
  const int n = static_cast<int>(config.GetInt("n"));
  const double eps = config.GetDouble("epsilon");
  const std::string name = config.Get("audit_mechanism");
  AnalyzedMechanism m;
  Json results;
  if (name == "rr") {
    m = RandomizedResponseMechanism(n, eps);
  } else if (name == "m_dio-parameter" || name == "m_dio-full") {
    const internal::HashSetup setup = internal::BuildHash(config, root);
    const MechanismConfig cfg =
        MechanismConfig::Default(setup.hash, setup.choice.value, eps,
                                 ParseObfuscationBackend(config.Get("obfuscation_backend")));
    results["mechanism"] = cfg.ToJson();
    m = name == "m_dio-parameter" ? MDioParameterView(cfg) : MDioFullView(cfg);
  } else {
    throw Error(ErrorCode::kConfiguration,
                "audit_mechanism must be rr, m_dio-parameter or m_dio-full");
  }
  CheckEnumerable(n, config.guards(), "audit");
  const BitVector x = internal::PointOrDefault(config.Get("audit_x"), BitVector::Zeros(n));
  const BitVector x_prime =
      x.WithFlipped(internal::FlipCoordinate(config.GetInt("audit_flip"), n));
  std::vector<double> grid;
  for (double k : config.GetDoubleList("audit_epsilon_grid")) grid.push_back(k * eps);
  ClaimReport report = AuditMechanism(m, x, x_prime, grid);
  results["audit"] = report.details;
  return internal::Finish("audit", config, std::move(results), {report});
}

inline CommandResult RunCommand(const std::string& command, const ExperimentConfig& config) {
  if (command == "mech-run") return CmdMechRun(config);
  if (command == "lower-bound") return CmdLowerBound(config);
  if (command == "collide") return CmdCollide(config);
  if (command == "boost") return CmdBoost(config);
  if (command == "audit") return CmdAudit(config);
  throw Error(ErrorCode::kConfiguration, "unknown subcommand '" + command + "'");
}

inline std::string CsvField(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

// One header row plus one row per claim.
inline std::string ClaimsToCsv(const std::vector<ClaimReport>& claims) {
  std::ostringstream out;
  out << "claim,mechanism,n,epsilon,d,lhs,rhs,mode,trials,seed,status,vacuous\n";
  for (const ClaimReport& c : claims) {
    auto detail = [&](const char* key) {
      return c.details.contains(key) ? CsvField(c.details[key]) : std::string();
    };
    out << c.claim << ',' << detail("mechanism") << ',' << detail("n") << ','
        << detail("epsilon") << ',' << detail("d") << ',' << Json(c.lhs).dump() << ','
        << Json(c.rhs).dump() << ',' << c.mode() << ',' << c.trials << ',' << c.seed << ','
        << ClaimStatusName(c.status) << ',' << (c.vacuous ? "true" : "false") << '\n';
  }
  return out.str();
}

inline std::string RenderReport(const CommandResult& result, const std::string& format) {
  if (format == "json") return result.report.dump(2) + "\n";
  if (format == "csv") return ClaimsToCsv(result.claims);
  throw Error(ErrorCode::kConfiguration, "format must be json or csv");
}

}  // namespace cdplab

#endif  // CDPLAB_EXPERIMENTS_H_
