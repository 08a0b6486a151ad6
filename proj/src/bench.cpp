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

#include "bddl/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "bddl/errors.hpp"
#include "bddl/logic.hpp"
#include "bddl/rng.hpp"

namespace bddl {

namespace {

constexpr double kJitterMeters = 0.01;

std::uint64_t fnv1a(std::uint64_t hash, const std::string& data) {
  for (const char c : data) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string report_digest(long frame, const GoalReport& report) {
  std::string data = std::to_string(frame) + "|" +
                     (report.satisfied ? "1" : "0") + "|";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9f", report.q_score);
  data += buf;
  for (const auto& leaf : report.leaf_results) {
    data += leaf.ok ? '+' : '-';
  }
  return data;
}

// Per-frame synthetic workload: every object wiggles by a uniform draw in
// [-1cm, +1cm] per axis, keyed by (seed, frame) so partitioning across
// workers cannot change the result.
SceneState jittered(const SceneState& base, std::uint64_t seed, long frame) {
  SceneState snapshot = base;
  Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(frame)));
  for (auto& [id, object] : snapshot.objects) {
    const Eigen::Vector3d delta{rng.uniform(-kJitterMeters, kJitterMeters),
                                rng.uniform(-kJitterMeters, kJitterMeters),
                                rng.uniform(-kJitterMeters, kJitterMeters)};
    object.pose.position += delta;
  }
  return snapshot;
}

}  // namespace

void BenchConfig::validate() const {
  if (workers.empty()) {
    throw FormatError("bench", "workers list must be non-empty");
  }
  if (!std::is_sorted(workers.begin(), workers.end())) {
    throw FormatError("bench", "workers list must be sorted ascending");
  }
  for (const int w : workers) {
    if (w < 1) throw FormatError("bench", "worker counts must be >= 1");
  }
  if (frames < 1) throw FormatError("bench", "frames must be >= 1");
  if (duration_cap_seconds <= 0) {
    throw FormatError("bench", "duration cap must be positive");
  }
}

BenchReport run_bench(const BenchConfig& config) {
  config.validate();
  const CompiledCondition compiled =
      compile(config.activity.goal, config.scope, config.taxonomy, config.scene);

  BenchReport report;
  for (const int worker_count : config.workers) {
    std::vector<std::uint64_t> frame_hashes(
        static_cast<std::size_t>(config.frames));
    std::atomic<bool> timed_out{false};

    const auto start = std::chrono::steady_clock::now();
    auto worker = [&](int worker_index) {
      for (long frame = worker_index; frame < config.frames;
           frame += worker_count) {
        if (timed_out.load(std::memory_order_relaxed)) return;
        const SceneState snapshot = jittered(config.scene, config.seed, frame);
        const GoalReport goal =
            score_goal(compiled, snapshot, config.predicate_params);
        frame_hashes[static_cast<std::size_t>(frame)] =
            fnv1a(0xcbf29ce484222325ULL, report_digest(frame, goal));
        if ((frame / worker_count) % 64 == 0) {
          const std::chrono::duration<double> elapsed =
              std::chrono::steady_clock::now() - start;
          if (elapsed.count() > config.duration_cap_seconds) {
            timed_out.store(true, std::memory_order_relaxed);
            return;
          }
        }
      }
    };

    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(worker_count));
    for (int k = 0; k < worker_count; ++k) {
      threads.emplace_back(worker, k);
    }
    for (auto& t : threads) t.join();
    const std::chrono::duration<double> elapsed =
        std::chrono::steady_clock::now() - start;
    if (timed_out.load()) throw TimeoutError(config.duration_cap_seconds);

    std::uint64_t combined = 0xcbf29ce484222325ULL;
    for (const std::uint64_t h : frame_hashes) {
      combined = fnv1a(combined, std::to_string(h));
    }
    char checksum[24];
    std::snprintf(checksum, sizeof(checksum), "%016" PRIx64, combined);

    BenchRow row;
    row.workers = worker_count;
    row.total_frames = config.frames;
    row.wall_seconds = elapsed.count();
    row.frames_per_second = static_cast<double>(config.frames) / elapsed.count();
    row.checksum = checksum;
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string BenchReport::to_json() const {
  nlohmann::ordered_json j;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json jr;
    jr["workers"] = row.workers;
    jr["total_frames"] = row.total_frames;
    jr["wall_seconds"] = row.wall_seconds;
    jr["frames_per_second"] = row.frames_per_second;
    jr["checksum"] = row.checksum;
    j["rows"].push_back(std::move(jr));
  }
  return j.dump(2) + "\n";
}

std::string BenchReport::to_table() const {
  std::ostringstream out;
  char line[128];
  std::snprintf(line, sizeof(line), "%8s %12s %12s %12s %18s\n", "workers",
                "frames", "wall_s", "fps", "checksum");
  out << line;
  for (const auto& row : rows) {
    std::snprintf(line, sizeof(line), "%8d %12ld %12.3f %12.1f %18s\n",
                  row.workers, row.total_frames, row.wall_seconds,
                  row.frames_per_second, row.checksum.c_str());
    out << line;
  }
  return out.str();
}

SpeedupTable speedup_table(const BenchReport& baseline, const BenchReport& candidate) {
  if (baseline.rows.size() != candidate.rows.size()) {
    throw MismatchedConfigsError();
  }
  SpeedupTable table;
  for (std::size_t i = 0; i < baseline.rows.size(); ++i) {
    if (baseline.rows[i].workers != candidate.rows[i].workers) {
      throw MismatchedConfigsError();
    }
    SpeedupRow row;
    row.workers = baseline.rows[i].workers;
    row.ratio = candidate.rows[i].frames_per_second /
                baseline.rows[i].frames_per_second;
    table.rows.push_back(row);
  }
  return table;
}

std::string SpeedupTable::to_table() const {
  std::ostringstream out;
  char line[64];
  std::snprintf(line, sizeof(line), "%8s %10s\n", "workers", "speedup");
  out << line;
  for (const auto& row : rows) {
    std::snprintf(line, sizeof(line), "%8d %9.2fx\n", row.workers, row.ratio);
    out << line;
  }
  return out.str();
}

}  // namespace bddl
