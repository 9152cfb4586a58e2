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

#include <gtest/gtest.h>

#include "ionsearch/app/commands.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace ionsearch;
using namespace ionsearch::app;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("ionsearch_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path write_config(const fs::path& dir, const json& j) {
  const fs::path p = dir / "config.json";
  std::ofstream(p) << j.dump();
  return p;
}

json minimal() { return {{"schema_version", 1}, {"n_ions", 4}, {"marked_index", 2}}; }

}  // namespace

TEST(ParseConfig, Minimal) {
  const auto rc = parse_config(minimal());
  EXPECT_EQ(rc.search.n_ions, 4u);
  EXPECT_EQ(rc.search.marked, 2u);
  EXPECT_EQ(rc.search.mode, Mode::ideal);
  EXPECT_EQ(rc.shots, 0u);
}

TEST(ParseConfig, FullSchema) {
  json j = minimal();
  j["mode"] = "physical";
  j["variant"] = "deterministic";
  j["initialization"] = "ideal";
  j["iterations"] = 2;
  j["pulse"] = {{"shape", "gaussian"}, {"width", 2.0}, {"spacing", 25.0}};
  j["integrator"] = {{"steps_per_pulse", 1000}, {"trajectory_stride", 10}};
  j["imperfections"] = {{"epsilon", 0.1}, {"scaling", "intensity"}};
  const auto rc = parse_config(j);
  EXPECT_EQ(rc.search.variant, Variant::deterministic);
  EXPECT_EQ(rc.search.pulse.shape, ShapeKind::gaussian);
  EXPECT_EQ(*rc.search.iterations, 2);
  EXPECT_EQ(rc.search.integrator.steps_per_pulse, 1000);
  EXPECT_EQ(rc.search.imperfections.beam.scaling, BeamScaling::intensity);
  // Echo round-trips.
  const auto again = parse_config(config_to_json(rc));
  EXPECT_EQ(config_to_json(again), config_to_json(rc));
}

TEST(ParseConfig, Rejections) {
  const auto bad = [](json j) { EXPECT_THROW(parse_config(j), ConfigError) << j.dump(); };
  json j = minimal();
  j["bogus"] = 1;
  bad(j);
  bad({{"n_ions", 4}, {"marked_index", 1}});
  j = minimal();
  j["schema_version"] = 2;
  bad(j);
  j = minimal();
  j["n_ions"] = 1;
  bad(j);
  j = minimal();
  j["marked_index"] = 5;
  bad(j);
  j = minimal();
  j["n_ions"] = -3;
  bad(j);
  j = minimal();
  j["mode"] = "quantum";
  bad(j);
  j = minimal();
  j["integrator"] = {{"norm_tolerance", 1e-6}};
  bad(j);
  j = minimal();
  j["pulse"] = {{"width", "wide"}};
  bad(j);
  j = minimal();
  j["imperfections"] = {{"epsilon", 1.2}};
  bad(j);
  j = minimal();
  j["imperfections"] = {{"factors", {1.0, 2.0}}};
  bad(j);
}

TEST(Output, FormatDoubleRoundTrips) {
  for (double x : {0.1, 1.0 / 3.0, 0.9352421018747142, 6.08e-5}) {
    EXPECT_EQ(std::stod(format_double(x)), x);
  }
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
}

TEST(Output, Sha256KnownVector) {
  EXPECT_EQ(sha256_hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Output, CsvLayout) {
  CsvWriter csv({"a", "b"});
  csv.row(1, 0.5);
  EXPECT_EQ(csv.str(), "a,b\n1,0.5\n");
}

TEST(CmdRun, WritesOutputsAndManifest) {
  const auto dir = scratch("run");
  json j = minimal();
  j["n_ions"] = 15;
  j["marked_index"] = 1;
  const auto cfg = write_config(dir, j);
  std::ostringstream err;
  ASSERT_EQ(cmd_run(cfg.string(), (dir / "out").string(), std::nullopt, err), kOk)
      << err.str();

  const json result = json::parse(slurp(dir / "out" / "result.json"));
  EXPECT_NEAR(result["success_probability"].get<double>(), 0.9352421018747142, 1e-12);
  EXPECT_EQ(result["parameters"]["n_grover"], 3);

  const std::string csv = slurp(dir / "out" / "trajectory.csv");
  EXPECT_EQ(csv.rfind("time,p_marked,p_slot0,p_other_total\n", 0), 0u);
  // Ideal mode: one row per iteration boundary.
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);

  const json manifest = json::parse(slurp(dir / "out" / "manifest.json"));
  ASSERT_EQ(manifest["outputs"].size(), 2u);
  for (const auto& o : manifest["outputs"]) {
    const auto bytes = slurp(dir / "out" / o["path"].get<std::string>());
    EXPECT_EQ(o["sha256"], sha256_hex(bytes));
  }
}

TEST(CmdRun, Deterministic) {
  const auto dir = scratch("det");
  json j = minimal();
  j["mode"] = "physical";
  j["integrator"] = {{"steps_per_pulse", 800}};
  const auto cfg = write_config(dir, j);
  ASSERT_EQ(cmd_run(cfg.string(), (dir / "a").string()), kOk);
  ASSERT_EQ(cmd_run(cfg.string(), (dir / "b").string()), kOk);
  EXPECT_EQ(slurp(dir / "a" / "trajectory.csv"), slurp(dir / "b" / "trajectory.csv"));
  EXPECT_EQ(slurp(dir / "a" / "result.json"), slurp(dir / "b" / "result.json"));
}

TEST(CmdRun, ShotsNeedSeed) {
  const auto dir = scratch("shots");
  json j = minimal();
  j["shots"] = 100;
  const auto cfg = write_config(dir, j);
  std::ostringstream err;
  EXPECT_EQ(cmd_run(cfg.string(), (dir / "o").string(), std::nullopt, err), kBadConfig);
  EXPECT_EQ(cmd_run(cfg.string(), (dir / "o").string(), 7, err), kOk);
  const json result = json::parse(slurp(dir / "o" / "result.json"));
  EXPECT_EQ(result["shots"]["counts"].size(), 5u);
}

TEST(CmdRun, BadConfigExitCodes) {
  const auto dir = scratch("bad");
  std::ostringstream err;
  EXPECT_EQ(cmd_run((dir / "missing.json").string(), (dir / "o").string(), std::nullopt, err),
            kBadConfig);
  std::ofstream(dir / "broken.json") << "{not json";
  EXPECT_EQ(cmd_run((dir / "broken.json").string(), (dir / "o").string(), std::nullopt, err),
            kBadConfig);
}

TEST(CmdRun, IntegrationFailureExitCode) {
  const auto dir = scratch("numfail");
  json j = minimal();
  j["mode"] = "physical";
  j["integrator"] = {{"steps_per_pulse", 10}};
  const auto cfg = write_config(dir, j);
  std::ostringstream err;
  EXPECT_EQ(cmd_run(cfg.string(), (dir / "o").string(), std::nullopt, err),
            kNumericalFailure);
}

TEST(CmdValidate, FastSuitePasses) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_validate("fast", std::nullopt, {}, out, err), kOk) << err.str();
  const json report = json::parse(out.str());
  EXPECT_TRUE(report["passed"].get<bool>());
  EXPECT_EQ(cmd_validate("medium", std::nullopt, {}, out, err), kBadConfig);
}

namespace {

bool check_passed(const json& report, const std::string& name) {
  for (const auto& c : report["checks"]) {
    if (c["name"] == name) return c["passed"].get<bool>();
  }
  ADD_FAILURE() << "no check " << name;
  return true;
}

json validate_with(double detuning_factor, int& code) {
  IntegratorConfig cfg;
  cfg.detuning_factor = detuning_factor;
  std::ostringstream out, err;
  code = cmd_validate("fast", std::nullopt, cfg, out, err);
  return json::parse(out.str());
}

}  // namespace

TEST(CmdValidate, FlippedDetuningSignFails) {
  // -delta conjugates the reflection phase; real-chi fidelities cannot see
  // it, the propagator comparison does.
  int code = 0;
  const json report = validate_with(-1.0, code);
  EXPECT_EQ(code, kValidationFailed);
  EXPECT_FALSE(check_passed(report, "propagator_vs_generalized_hr"));
}

TEST(CmdValidate, HalvedDetuningFails) {
  int code = 0;
  const json report = validate_with(0.5, code);
  EXPECT_EQ(code, kValidationFailed);
  EXPECT_FALSE(check_passed(report, "deterministic_fidelity_physical"));
  EXPECT_FALSE(check_passed(report, "propagator_vs_generalized_hr"));
}

TEST(CmdReproduce, UnknownFigure) {
  std::ostringstream err;
  EXPECT_EQ(cmd_reproduce("fig9", scratch("fig9").string(), 1, err), kBadConfig);
}
