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

// Command-line driver: cdplab <subcommand> [--config PATH] [--seed U64]
// [--out PATH] [--format json|csv] [--set KEY=VALUE ...]

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cdplab.h"

namespace {

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format;
  std::vector<std::string> overrides;
};

int Execute(const std::string& command, const Options& opts) {
  std::string out_path = opts.out;
  std::string format = opts.format.empty() ? "json" : opts.format;
  try {
    cdplab::ExperimentConfig config;
    if (!opts.config_path.empty()) config.MergeFile(opts.config_path);
    for (const std::string& item : opts.overrides) config.MergeText(item, "--set");
    if (opts.seed) config.Set("seed", std::to_string(*opts.seed));
    if (!opts.out.empty()) config.Set("out", opts.out);
    if (!opts.format.empty()) config.Set("format", opts.format);
    out_path = config.Get("out");
    format = config.Get("format");
    const cdplab::CommandResult result = cdplab::RunCommand(command, config);
    const std::string text = cdplab::RenderReport(result, format);
    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream file(out_path, std::ios::binary);
      if (!file) throw cdplab::Error(cdplab::ErrorCode::kConfiguration, "cannot write " + out_path);
      file << text;
    }
    std::cerr << command << ": " << cdplab::ClaimStatusName(result.status) << "\n";
    return cdplab::ExitCodeFor(result.status);
  } catch (const cdplab::Error& e) {
    cdplab::Json error = {{"command", command},
                          {"version", cdplab::Version()},
                          {"error", {{"code", cdplab::ErrorCodeName(e.code())},
                                     {"message", e.what()}}}};
    std::cerr << e.what() << "\n";
    if (!out_path.empty() && format == "json") {
      std::ofstream(out_path, std::ios::binary) << error.dump(2) << "\n";
    }
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differential privacy separation laboratory"};
  app.set_version_flag("--version", cdplab::Version());
  app.require_subcommand(1);
  Options opts;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"mech-run", "Run m_cdp on points of R and compare usefulness with the exact oracle"},
      {"lower-bound", "Verify the statistical lower-bound chain on a parameter grid"},
      {"collide", "Harvest same-hash differing inputs from the circuit sampler"},
      {"boost", "Boost a weak nearby-point mechanism with private tuning"},
      {"audit", "Hockey-stick audit of a mechanism on one adjacent pair"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", opts.config_path, "key = value config file")
        ->check(CLI::ExistingFile);
    sub->add_option("--seed", opts.seed, "root seed (overrides the config file)");
    sub->add_option("--out", opts.out, "report path (default: stdout)");
    sub->add_option("--format", opts.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--set", opts.overrides, "override one config key: KEY=VALUE");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  return Execute(app.get_subcommands().front()->get_name(), opts);
}
