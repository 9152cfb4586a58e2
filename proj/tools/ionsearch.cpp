// Copyright 2026 The ionsearch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ionsearch/app/commands.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <thread>

int main(int argc, char** argv) {
  using namespace ionsearch::app;

  CLI::App app{"Grover search with Householder reflections on a trapped-ion chain"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::string figure;
  std::string suite = "fast";
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());

  auto* run = app.add_subcommand("run", "Run one search from a JSON config");
  run->add_option("--config", config_path, "Config file (JSON)")->required();
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_option("--seed", seed, "Seed for shot sampling");

  auto* reproduce = app.add_subcommand("reproduce", "Write figure data as CSV");
  reproduce->add_option("--figure", figure, "Figure to reproduce")
      ->required()
      ->check(CLI::IsMember({"fig3", "fig4"}));
  reproduce->add_option("--out", out_dir, "Output directory")->required();
  reproduce->add_option("--jobs", jobs, "Worker threads for sweeps")
      ->check(CLI::PositiveNumber);

  auto* validate = app.add_subcommand("validate", "Run the self-check suites");
  validate->add_option("--suite", suite, "fast | full")
      ->check(CLI::IsMember({"fast", "full"}));
  std::optional<std::string> report_dir;
  validate->add_option("--out", report_dir, "Directory for report.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadConfig;
  }

  if (*run) return cmd_run(config_path, out_dir, seed);
  if (*reproduce) return cmd_reproduce(figure, out_dir, jobs);
  if (*validate) return cmd_validate(suite, report_dir);
  return kBadConfig;
}
