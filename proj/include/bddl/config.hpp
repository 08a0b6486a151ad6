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

#ifndef BDDL_CONFIG_HPP
#define BDDL_CONFIG_HPP

#include <string>
#include <string_view>
#include <vector>

#include "bddl/predicates.hpp"
#include "bddl/sampler.hpp"

namespace bddl {

/// Engine-wide settings, loadable from a TOML-style key/value file:
///
///   strict = true
///   taxonomy_path = "data/taxonomy.txt"
///   object_library_path = "data/object_library.json"
///   [predicate_params]
///   touch_epsilon = 0.001
///   support_gap = 0.02
///   footprint_ratio = 0.5
///   inside_ratio = 0.5
///   nextto_scale = 0.5
///   [sampler_params]
///   max_attempts_per_atom = 100
///   clearance = 0.005
///
/// Every key is optional; missing keys keep their defaults. Relative paths
/// resolve against the config file's directory.
struct EngineConfig {
  PredicateParams predicate_params;
  SamplerParams sampler_params;
  std::string taxonomy_path;
  std::string object_library_path;
  bool strict = false;
};

EngineConfig parse_engine_config(std::string_view source,
                                 const std::string& base_dir);

/// Loads from path and validates that referenced paths exist.
EngineConfig load_engine_config(const std::string& path);

/// One asset-collection row of the manifest.
struct ManifestRow {
  std::string asset_name;
  long apartment_count = 0;
  long room_count = 0;
  long category_count = 0;
  long object_count = 0;
  long articulated_object_count = 0;
};

using Manifest = std::vector<ManifestRow>;

/// Parses the manifest JSON: an array of rows with the six named fields.
Manifest load_manifest(std::string_view source);

/// Renders the manifest as an aligned table with columns
/// Asset | Apt. | Rm. | Cat. | Obj. | A.O.; markdown mode emits a pipe table
/// and bolds each column's maximum.
std::string render_manifest_table(const Manifest& manifest, bool markdown);

}  // namespace bddl

#endif  // BDDL_CONFIG_HPP
