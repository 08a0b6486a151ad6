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

#ifndef BDDL_BENCH_HPP
#define BDDL_BENCH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "bddl/activity.hpp"
#include "bddl/predicates.hpp"
#include "bddl/scene.hpp"
#include "bddl/taxonomy.hpp"

namespace bddl {

/// Throughput sweep configuration. The workload is a fixed set of `frames`
/// evaluation frames; each worker count partitions the same frames across
/// that many threads, so results (and their checksum) cannot depend on the
/// worker count. Per-frame work: apply seeded ±1 cm position jitter to every
/// object (keyed by the global frame index) and score the goal.
struct BenchConfig {
  std::vector<int> workers;  // non-empty, sorted ascending
  long frames = 1000;        // total frames per row
  SceneState scene;
  Activity activity;
  GroundScope scope;
  Taxonomy taxonomy;
  PredicateParams predicate_params;
  std::uint64_t seed = 0;
  double duration_cap_seconds = 300.0;

  void validate() const;
};

struct BenchRow {
  int workers = 0;
  long total_frames = 0;
  double wall_seconds = 0.0;
  double frames_per_second = 0.0;
  std::string checksum;  // FNV-1a over all GoalReports in frame order
};

struct BenchReport {
  std::vector<BenchRow> rows;

  std::string to_json() const;
  std::string to_table() const;
};

/// Runs the sweep. Throws TimeoutError when a row exceeds the duration cap;
/// compile/evaluate errors propagate.
BenchReport run_bench(const BenchConfig& config);

struct SpeedupRow {
  int workers = 0;
  double ratio = 0.0;  // candidate fps / baseline fps
};

struct SpeedupTable {
  std::vector<SpeedupRow> rows;

  /// Aligned text, ratios to two decimal places (e.g. "10.40x").
  std::string to_table() const;
};

/// Per-worker-count fps ratios. Throws MismatchedConfigsError when the
/// reports' worker lists differ.
SpeedupTable speedup_table(const BenchReport& baseline, const BenchReport& candidate);

}  // namespace bddl

#endif  // BDDL_BENCH_HPP
