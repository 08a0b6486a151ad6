// Copyright 2026 The bddlkit Authors
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bddl/bench.hpp"
#include "bddl/errors.hpp"
#include "bddl/parser.hpp"
#include "helpers.hpp"

using namespace bddl;

namespace {

// A synthetic crate-grid world sized for throughput runs.
BenchConfig synthetic_config(int crates) {
  BenchConfig config;
  config.taxonomy = load_taxonomy(
      "hierarchy\ncrate.n.01 thing.n.01\nfloor.n.01 thing.n.01\n"
      "categories\ncrate crate.n.01\nfloor floor.n.01\n");
  config.scene.rooms["hall"] = testing::square_room("hall", 50.0);
  // Grid spacing puts adjacent gaps right at the nextto threshold
  // (0.5 * footprint diagonal = 0.283), so the per-frame jitter keeps
  // flipping atoms and the reports actually depend on the seed.
  for (int i = 0; i < crates; ++i) {
    char id[16];
    std::snprintf(id, sizeof(id), "crate_%03d", i);
    const double x = 0.683 * (i % 10) + 0.4;
    const double y = 0.683 * (i / 10) + 0.4;
    config.scene.objects[id] = testing::make_box(
        id, {x, y, 0.2}, {0.2, 0.2, 0.2}, Eigen::Quaterniond::Identity(),
        "crate");
  }
  config.activity = parse_activity(
      "(define (problem crate_survey) (:domain synthetic) "
      "(:objects crate.n.01_1 - crate.n.01 floor.n.01_1 - floor.n.01) "
      "(:init (onfloor crate.n.01_1 floor.n.01_1)) "
      "(:goal (and (forall (?x - crate.n.01) (nextto ?x crate.n.01_1)) "
      "(exists (?y - crate.n.01) (touching ?y crate.n.01_1)))))");
  config.scope.bindings["crate.n.01_1"] = "crate_000";
  config.scope.bindings["floor.n.01_1"] = "hall";
  return config;
}

}  // namespace

TEST_CASE("a single-worker run reports one row with the frame total") {
  BenchConfig config = synthetic_config(20);
  config.workers = {1};
  config.frames = 100;
  config.seed = 5;
  const BenchReport report = run_bench(config);
  REQUIRE(report.rows.size() == 1);
  CHECK(report.rows[0].workers == 1);
  CHECK(report.rows[0].total_frames == 100);
  CHECK(report.rows[0].frames_per_second > 0);
  CHECK(report.rows[0].wall_seconds > 0);
}

TEST_CASE("checksums are identical across worker counts for a fixed seed") {
  BenchConfig config = synthetic_config(30);
  config.workers = {1, 4};
  config.frames = 200;
  config.seed = 17;
  const BenchReport report = run_bench(config);
  REQUIRE(report.rows.size() == 2);
  CHECK(report.rows[0].checksum == report.rows[1].checksum);

  // a different seed produces different work, hence a different checksum
  config.seed = 18;
  const BenchReport other = run_bench(config);
  CHECK(other.rows[0].checksum != report.rows[0].checksum);
}

TEST_CASE("worker sweep keeps fps positive in every row") {
  BenchConfig config = synthetic_config(30);
  config.workers = {1, 2, 4};
  config.frames = 150;
  const BenchReport report = run_bench(config);
  REQUIRE(report.rows.size() == 3);
  for (const auto& row : report.rows) {
    CHECK(row.frames_per_second > 0);
    CHECK(row.wall_seconds > 0);
    CHECK(row.total_frames == 150);
  }
}

TEST_CASE("config validation") {
  BenchConfig config = synthetic_config(5);
  config.workers = {};
  CHECK_THROWS_AS(run_bench(config), FormatError);
  config.workers = {4, 1};
  CHECK_THROWS_AS(run_bench(config), FormatError);
  config.workers = {0};
  CHECK_THROWS_AS(run_bench(config), FormatError);
  config.workers = {1};
  config.frames = 0;
  CHECK_THROWS_AS(run_bench(config), FormatError);
}

TEST_CASE("a tiny duration cap trips the timeout") {
  BenchConfig config = synthetic_config(100);
  config.workers = {1};
  config.frames = 2000000;
  config.duration_cap_seconds = 0.05;
  CHECK_THROWS_AS(run_bench(config), TimeoutError);
}

TEST_CASE("speedup_table is the fps ratio per worker count") {
  BenchReport baseline;
  baseline.rows = {{1, 100, 10.0, 50.0, "x"}, {16, 100, 1.0, 100.0, "x"}};
  BenchReport candidate;
  candidate.rows = {{1, 100, 5.0, 100.0, "x"}, {16, 100, 0.5, 200.0, "x"}};

  const SpeedupTable table = speedup_table(baseline, candidate);
  REQUIRE(table.rows.size() == 2);
  CHECK(table.rows[0].ratio == doctest::Approx(2.0));
  CHECK(table.rows[1].ratio == doctest::Approx(2.0));

  const SpeedupTable identity = speedup_table(baseline, baseline);
  for (const auto& row : identity.rows) {
    CHECK(row.ratio == doctest::Approx(1.0));
  }

  BenchReport mismatched;
  mismatched.rows = {{2, 100, 1.0, 1.0, "x"}};
  CHECK_THROWS_AS(speedup_table(baseline, mismatched), MismatchedConfigsError);
}

TEST_CASE("speedup formatting renders published-style ratio tables") {
  // format reference only: fps pairs chosen to produce well-known-looking
  // ratios in the rendered table
  BenchReport sparse_base, sparse_cand;
  sparse_base.rows = {{64, 1000, 1.0, 100.0, "x"}};
  sparse_cand.rows = {{64, 1000, 1.0, 1040.0, "x"}};
  const std::string sparse = speedup_table(sparse_base, sparse_cand).to_table();
  CHECK(sparse.find("10.40x") != std::string::npos);

  BenchReport dense_base, dense_cand;
  dense_base.rows = {{1, 1000, 1.0, 100.0, "x"},
                     {16, 1000, 1.0, 100.0, "x"},
                     {64, 1000, 1.0, 100.0, "x"}};
  dense_cand.rows = {{1, 1000, 1.0, 94.0, "x"},
                     {16, 1000, 1.0, 150.0, "x"},
                     {64, 1000, 1.0, 125.0, "x"}};
  const std::string dense = speedup_table(dense_base, dense_cand).to_table();
  CHECK(dense.find("0.94x") != std::string::npos);
  CHECK(dense.find("1.50x") != std::string::npos);
  CHECK(dense.find("1.25x") != std::string::npos);
}

TEST_CASE("reports serialize to JSON with all row fields") {
  BenchConfig config = synthetic_config(10);
  config.workers = {1, 2};
  config.frames = 50;
  const BenchReport report = run_bench(config);
  const std::string json = report.to_json();
  CHECK(json.find("\"workers\": 1") != std::string::npos);
  CHECK(json.find("\"checksum\"") != std::string::npos);
  const std::string table = report.to_table();
  CHECK(table.find("fps") != std::string::npos);
}
