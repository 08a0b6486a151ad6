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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "bddl/bench.hpp"
#include "bddl/config.hpp"
#include "bddl/errors.hpp"
#include "bddl/logic.hpp"
#include "bddl/parser.hpp"
#include "bddl/sampler.hpp"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitDomainError = 1;
constexpr int kExitUsageError = 2;

std::string read_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw bddl::FormatError("io", "cannot open " + path);
  std::stringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw bddl::FormatError("io", "cannot write " + path);
  file << content;
}

struct CommonOptions {
  std::string config_path;
  std::string taxonomy_path;
  std::string object_library_path;
  bool strict = false;
  bool strict_set = false;

  bddl::EngineConfig resolve() const {
    bddl::EngineConfig config;
    std::string path = config_path;
    if (path.empty()) {
      if (const char* env = std::getenv("ENGINE_CONFIG")) path = env;
    }
    if (!path.empty()) config = bddl::load_engine_config(path);
    if (!taxonomy_path.empty()) config.taxonomy_path = taxonomy_path;
    if (!object_library_path.empty()) config.object_library_path = object_library_path;
    if (strict_set) config.strict = strict;
    return config;
  }
};

bddl::Taxonomy require_taxonomy(const bddl::EngineConfig& config) {
  if (config.taxonomy_path.empty()) {
    throw bddl::FormatError(
        "config", "a taxonomy is required (--taxonomy or taxonomy_path)");
  }
  return bddl::load_taxonomy(read_file(config.taxonomy_path));
}

Json report_to_ordered_json(const bddl::GoalReport& report) {
  return Json::parse(report.to_json());
}

Json position_error_json(bddl::SourcePos pos, const std::string& message) {
  Json j;
  j["line"] = pos.line;
  j["column"] = pos.column;
  j["message"] = message;
  return j;
}

int cmd_validate(const std::vector<std::string>& paths) {
  bool all_ok = true;
  for (const auto& path : paths) {
    Json row;
    row["path"] = path;
    try {
      bddl::parse_activity(read_file(path));
      row["ok"] = true;
      std::cerr << path << ": OK\n";
    } catch (const bddl::SyntaxError& e) {
      all_ok = false;
      row["ok"] = false;
      row["error"] = position_error_json(e.pos(), e.what());
      std::cerr << path << ":" << e.pos().line << ":" << e.pos().column << ": "
                << e.what() << "\n";
    } catch (const bddl::IllegalCharacterError& e) {
      all_ok = false;
      row["ok"] = false;
      row["error"] = position_error_json(e.pos(), e.what());
      std::cerr << path << ":" << e.pos().line << ":" << e.pos().column << ": "
                << e.what() << "\n";
    } catch (const bddl::SemanticError& e) {
      all_ok = false;
      row["ok"] = false;
      row["error"] = position_error_json(e.pos(), e.what());
      std::cerr << path << ":" << e.pos().line << ":" << e.pos().column << ": "
                << e.what() << "\n";
    } catch (const bddl::Error& e) {
      all_ok = false;
      row["ok"] = false;
      row["error"] = {{"message", e.what()}};
      std::cerr << path << ": " << e.what() << "\n";
    }
    std::cout << row.dump() << "\n";
  }
  return all_ok ? kExitOk : kExitDomainError;
}

int cmd_classify(const std::vector<std::string>& paths,
                 const std::vector<std::string>& extra_supported) {
  std::set<std::string> supported = bddl::kinematic_predicates();
  supported.insert(extra_supported.begin(), extra_supported.end());

  long kinematic = 0;
  for (const auto& path : paths) {
    Json row;
    row["activity"] = path;
    try {
      const bddl::Activity activity = bddl::parse_activity(read_file(path));
      const bddl::KinematicClassification result =
          bddl::classify_kinematic(activity, supported);
      row["kinematic_only"] = result.kinematic_only;
      row["unsupported"] = result.unsupported_predicates;
      if (result.kinematic_only) ++kinematic;
    } catch (const bddl::Error& e) {
      row["kinematic_only"] = false;
      row["parse_error"] = e.what();
      std::cerr << path << ": " << e.what() << "\n";
    }
    std::cout << row.dump() << "\n";
  }
  std::cout << kinematic << " of " << paths.size() << " kinematic-only\n";
  return kExitOk;
}

int cmd_sample(const CommonOptions& common, const std::string& activity_path,
               const std::string& scene_path, std::optional<std::uint64_t> seed,
               const std::string& out_scene, const std::string& out_scope) {
  const bddl::EngineConfig config = common.resolve();
  const bddl::Taxonomy taxonomy = require_taxonomy(config);
  if (config.object_library_path.empty()) {
    throw bddl::FormatError(
        "config", "an object library is required (--objects or object_library_path)");
  }
  const bddl::ObjectLibrary library =
      bddl::load_object_library(read_file(config.object_library_path));
  const bddl::Activity activity = bddl::parse_activity(read_file(activity_path));
  const bddl::SceneState base_scene = bddl::load_scene(read_file(scene_path));

  bddl::SamplerParams params = config.sampler_params;
  if (seed) params.seed = *seed;
  const bddl::SampledInstance instance = bddl::sample_instance(
      activity, base_scene, taxonomy, library, params, config.predicate_params);

  write_file(out_scene, bddl::scene_to_json(instance.scene));
  write_file(out_scope, bddl::scope_to_json(instance.scope));

  const bddl::GoalReport init_report =
      bddl::check_init(activity, instance.scope, taxonomy, instance.scene,
                       config.predicate_params);
  Json summary;
  summary["activity"] = instance.activity_name;
  summary["seed"] = instance.seed;
  summary["init_q_score"] = init_report.q_score;
  summary["scene_path"] = out_scene;
  summary["scope_path"] = out_scope;
  std::cout << summary.dump() << "\n";
  return kExitOk;
}

int cmd_evaluate(const CommonOptions& common, const std::string& activity_path,
                 const std::string& scene_path, const std::string& scope_path) {
  const bddl::EngineConfig config = common.resolve();
  const bddl::Taxonomy taxonomy = require_taxonomy(config);
  const bddl::Activity activity = bddl::parse_activity(read_file(activity_path));

  const bddl::PresampledLoad loaded = bddl::load_presampled(
      activity, read_file(scene_path), read_file(scope_path), taxonomy,
      config.predicate_params, config.strict);
  if (loaded.warning) std::cerr << "warning: " << *loaded.warning << "\n";

  const bddl::GoalReport init_report =
      bddl::check_init(activity, loaded.instance.scope, taxonomy,
                       loaded.instance.scene, config.predicate_params);
  const bddl::CompiledCondition goal =
      bddl::compile(activity.goal, loaded.instance.scope, taxonomy,
                    loaded.instance.scene);
  const bddl::GoalReport goal_report =
      bddl::score_goal(goal, loaded.instance.scene, config.predicate_params);

  Json out;
  out["init"] = report_to_ordered_json(init_report);
  out["goal"] = report_to_ordered_json(goal_report);
  std::cout << out.dump() << "\n";
  return kExitOk;
}

int cmd_replay(const CommonOptions& common, const std::string& activity_path,
               const std::string& scene_path, const std::string& scope_path,
               const std::string& trajectory_path) {
  const bddl::EngineConfig config = common.resolve();
  const bddl::Taxonomy taxonomy = require_taxonomy(config);
  const bddl::Activity activity = bddl::parse_activity(read_file(activity_path));
  bddl::SceneState scene = bddl::load_scene(read_file(scene_path));
  const bddl::GroundScope scope = bddl::scope_from_json(read_file(scope_path));
  bddl::validate_scope(scope, scene);
  const std::vector<bddl::TrajectoryFrame> frames =
      bddl::load_trajectory(read_file(trajectory_path));

  const bddl::CompiledCondition goal =
      bddl::compile(activity.goal, scope, taxonomy, scene);

  std::optional<long> first_success;
  bddl::GoalReport last_report;
  for (const auto& frame : frames) {
    try {
      scene = bddl::apply_frame(scene, frame.poses);
    } catch (const bddl::UnknownObjectError& e) {
      throw bddl::FormatError("frame " + std::to_string(frame.t), e.what());
    }
    last_report = bddl::score_goal(goal, scene, config.predicate_params);
    Json row;
    row["t"] = frame.t;
    const Json body = report_to_ordered_json(last_report);
    for (const auto& [key, value] : body.items()) row[key] = value;
    std::cout << row.dump() << "\n";
    if (last_report.satisfied && !first_success) first_success = frame.t;
  }

  Json summary;
  summary["frames"] = frames.size();
  if (first_success) {
    summary["first_success"] = *first_success;
  } else {
    summary["first_success"] = nullptr;
  }
  summary["final_satisfied"] = last_report.satisfied;
  summary["final_q_score"] = last_report.q_score;
  std::cout << summary.dump() << "\n";
  return kExitOk;
}

int cmd_bench(const CommonOptions& common, const std::string& activity_path,
              const std::string& scene_path, const std::string& scope_path,
              const std::string& workers_csv, long frames, std::uint64_t seed,
              const std::string& json_out, const std::string& baseline_path) {
  const bddl::EngineConfig config = common.resolve();
  bddl::BenchConfig bench;
  bench.taxonomy = require_taxonomy(config);
  bench.activity = bddl::parse_activity(read_file(activity_path));
  bench.scene = bddl::load_scene(read_file(scene_path));
  if (!scope_path.empty()) {
    bench.scope = bddl::scope_from_json(read_file(scope_path));
    bddl::validate_scope(bench.scope, bench.scene);
  } else {
    bench.scope =
        bddl::ground_terms(bench.activity, bench.taxonomy, bench.scene, seed);
  }
  bench.predicate_params = config.predicate_params;
  bench.frames = frames;
  bench.seed = seed;

  std::stringstream csv(workers_csv);
  std::string item;
  while (std::getline(csv, item, ',')) {
    try {
      bench.workers.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw bddl::FormatError("bench", "bad worker count '" + item + "'");
    }
  }

  const bddl::BenchReport report = bddl::run_bench(bench);
  std::cout << report.to_table();
  if (!json_out.empty()) write_file(json_out, report.to_json());

  if (!baseline_path.empty()) {
    bddl::BenchReport baseline;
    try {
      const Json jb = Json::parse(read_file(baseline_path));
      for (const auto& jr : jb.at("rows")) {
        bddl::BenchRow row;
        row.workers = jr.at("workers").get<int>();
        row.total_frames = jr.at("total_frames").get<long>();
        row.wall_seconds = jr.at("wall_seconds").get<double>();
        row.frames_per_second = jr.at("frames_per_second").get<double>();
        row.checksum = jr.at("checksum").get<std::string>();
        baseline.rows.push_back(std::move(row));
      }
    } catch (const Json::exception& e) {
      throw bddl::FormatError("baseline", e.what());
    }
    std::cout << "\nspeedup vs baseline:\n"
              << bddl::speedup_table(baseline, report).to_table();
  }
  return kExitOk;
}

int cmd_stats(const std::string& manifest_path, bool markdown) {
  const bddl::Manifest manifest = bddl::load_manifest(read_file(manifest_path));
  std::cout << bddl::render_manifest_table(manifest, markdown);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"BDDL activity engine: parse, sample, evaluate, and benchmark "
               "household activities defined as logic over kinematic predicates"};
  app.require_subcommand(1);

  CommonOptions common;
  app.add_option("--config", common.config_path,
                 "engine config file (overrides ENGINE_CONFIG)");
  app.add_option("--taxonomy", common.taxonomy_path, "taxonomy file");
  app.add_option("--objects", common.object_library_path, "object library JSON");
  auto* strict_flag =
      app.add_flag("--strict,!--no-strict", common.strict,
                   "fail on init violations in pre-sampled input");

  std::vector<std::string> paths;
  auto* validate =
      app.add_subcommand("validate", "parse BDDL files and report diagnostics");
  validate->add_option("paths", paths, "BDDL problem files")->required();

  std::vector<std::string> extra_supported;
  auto* classify =
      app.add_subcommand("classify", "report which activities are kinematic-only");
  classify->add_option("paths", paths, "BDDL problem files")->required();
  classify->add_option("--supported", extra_supported,
                       "extra predicate names to treat as supported");

  std::string activity_path;
  std::string scene_path;
  std::string scope_path;
  std::string out_scene = "sampled_scene.json";
  std::string out_scope = "sampled_scope.json";
  std::uint64_t seed = 0;

  auto* sample = app.add_subcommand(
      "sample", "instantiate an activity by seeded rejection sampling");
  sample->add_option("--activity", activity_path, "BDDL problem file")->required();
  sample->add_option("--scene", scene_path, "base scene JSON")->required();
  auto* sample_seed = sample->add_option("--seed", seed, "sampler seed");
  sample->add_option("--out-scene", out_scene, "output scene path");
  sample->add_option("--out-scope", out_scope, "output scope path");

  auto* evaluate = app.add_subcommand(
      "evaluate", "check init and score the goal for a scene + scope");
  evaluate->add_option("--activity", activity_path, "BDDL problem file")->required();
  evaluate->add_option("--scene", scene_path, "scene JSON")->required();
  evaluate->add_option("--scope", scope_path, "term binding JSON")->required();

  std::string trajectory_path;
  auto* replay = app.add_subcommand(
      "replay", "score the goal for every frame of a trajectory");
  replay->add_option("--activity", activity_path, "BDDL problem file")->required();
  replay->add_option("--scene", scene_path, "scene JSON")->required();
  replay->add_option("--scope", scope_path, "term binding JSON")->required();
  replay->add_option("--trajectory", trajectory_path, "JSON Lines trajectory")
      ->required();

  std::string workers_csv = "1,2,4";
  long frames = 1000;
  std::string json_out;
  std::string baseline_path;
  auto* bench = app.add_subcommand(
      "bench", "measure goal-evaluation throughput across worker counts");
  bench->add_option("--activity", activity_path, "BDDL problem file")->required();
  bench->add_option("--scene", scene_path, "scene JSON")->required();
  bench->add_option("--scope", scope_path, "term binding JSON (default: ground)");
  bench->add_option("--workers", workers_csv, "comma-separated worker counts");
  bench->add_option("--frames", frames, "total frames per worker count");
  bench->add_option("--seed", seed, "jitter/grounding seed");
  bench->add_option("--json", json_out, "write the JSON report here");
  bench->add_option("--baseline", baseline_path,
                    "previous JSON report to compute speedups against");

  std::string manifest_path;
  bool markdown = false;
  auto* stats = app.add_subcommand("stats", "render an asset manifest table");
  stats->add_option("--manifest", manifest_path, "manifest JSON")->required();
  stats->add_flag("--markdown", markdown, "markdown table with bold maxima");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsageError;
  }
  common.strict_set = strict_flag->count() > 0;

  try {
    if (validate->parsed()) return cmd_validate(paths);
    if (classify->parsed()) return cmd_classify(paths, extra_supported);
    if (sample->parsed()) {
      return cmd_sample(common, activity_path, scene_path,
                        sample_seed->count() > 0
                            ? std::optional<std::uint64_t>(seed)
                            : std::nullopt,
                        out_scene, out_scope);
    }
    if (evaluate->parsed()) {
      return cmd_evaluate(common, activity_path, scene_path, scope_path);
    }
    if (replay->parsed()) {
      return cmd_replay(common, activity_path, scene_path, scope_path,
                        trajectory_path);
    }
    if (bench->parsed()) {
      return cmd_bench(common, activity_path, scene_path, scope_path, workers_csv,
                       frames, seed, json_out, baseline_path);
    }
    if (stats->parsed()) return cmd_stats(manifest_path, markdown);
  } catch (const bddl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomainError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomainError;
  }
  return kExitUsageError;
}
