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

#ifndef BDDL_SAMPLER_HPP
#define BDDL_SAMPLER_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bddl/activity.hpp"
#include "bddl/predicates.hpp"
#include "bddl/scene.hpp"
#include "bddl/taxonomy.hpp"

namespace bddl {

struct SamplerParams {
  int max_attempts_per_atom = 100;
  double clearance = 0.005;  // meters above the support surface
  std::uint64_t seed = 0;

  void validate() const;
};

/// Default half extents per synset, used when an activity object has no
/// instance in the base scene and must be spawned.
using ObjectLibrary = std::map<std::string, Eigen::Vector3d>;

/// Parses the object library JSON: {"<synset>": [hx, hy, hz], ...}.
ObjectLibrary load_object_library(std::string_view source);

/// A concrete activity instantiation: scene plus term binding. Invariant:
/// check_init over (scene, scope) reports q_score = 1.0.
struct SampledInstance {
  SceneState scene;
  GroundScope scope;
  std::string activity_name;
  std::uint64_t seed = 0;
};

/// Orders init entries for placement: inroom directives first, positive
/// atoms topologically sorted by the support relation (an atom placing X
/// relative to Y precedes any atom placing Z relative to X), negative atoms
/// last. Throws CyclicSupportError when the placement graph has a cycle.
std::vector<Condition> order_constraints(const std::vector<Condition>& init);

/// Instantiates the activity in base_scene by seeded rejection sampling:
/// grounds terms (spawning objects from the library when the scene has no
/// instance of a synset), then draws placements per positive kinematic init
/// atom until the atom, all previously placed atoms, all negative atoms, and
/// the pairwise no-interpenetration rule hold. Deterministic given
/// params.seed.
SampledInstance sample_instance(const Activity& activity,
                                const SceneState& base_scene,
                                const Taxonomy& taxonomy,
                                const ObjectLibrary& library,
                                const SamplerParams& params,
                                const PredicateParams& predicate_params);

struct PresampledLoad {
  SampledInstance instance;
  std::optional<std::string> warning;  // set when q < 1 in non-strict mode
};

/// Loads an externally produced scene + scope pair and re-verifies the init
/// conditions instead of trusting them. When the re-check scores below 1.0,
/// strict mode throws InitViolatedError listing the failed leaves; otherwise
/// the result carries a warning.
PresampledLoad load_presampled(const Activity& activity,
                               std::string_view scene_source,
                               std::string_view scope_source,
                               const Taxonomy& taxonomy,
                               const PredicateParams& predicate_params,
                               bool strict);

/// Serializes a term binding to JSON ({"term": "instance", ...}).
std::string scope_to_json(const GroundScope& scope);
GroundScope scope_from_json(std::string_view source);

}  // namespace bddl

#endif  // BDDL_SAMPLER_HPP
