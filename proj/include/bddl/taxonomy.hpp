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

#ifndef BDDL_TAXONOMY_HPP
#define BDDL_TAXONOMY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "bddl/activity.hpp"
#include "bddl/scene.hpp"

namespace bddl {

/// Category name under which every Room counts as a scene instance, so floor
/// terms (e.g. floor.n.01_1) can ground to rooms.
inline constexpr const char* kFloorCategory = "floor";

/// Synset forest with a category-to-synset map. Immutable after load.
class Taxonomy {
 public:
  Taxonomy() = default;

  /// Builds from (child, parent) synset pairs and (category, synset) pairs.
  /// Throws CycleDetectedError when parent links loop, DanglingReferenceError
  /// when a category names a missing synset, FormatError on a synset with two
  /// distinct parents (the hierarchy is a forest, not a DAG).
  Taxonomy(const std::vector<std::pair<std::string, std::string>>& hierarchy,
           const std::vector<std::pair<std::string, std::string>>& categories);

  bool contains(const std::string& synset) const { return nodes_.count(synset) > 0; }
  const std::set<std::string>& nodes() const { return nodes_; }
  std::optional<std::string> parent_of(const std::string& synset) const;

  /// True iff ancestor is reachable from synset via zero or more parent
  /// links. Throws UnknownSynsetError when either name is absent.
  bool is_a(const std::string& synset, const std::string& ancestor) const;

  /// Synset for a category string. Falls back to treating a category that
  /// itself names a synset as that synset. nullopt when neither applies.
  std::optional<std::string> synset_of_category(const std::string& category) const;

  /// Some category mapped to this exact synset (lexicographically smallest),
  /// used when spawning objects; falls back to the synset name itself.
  std::string category_for_synset(const std::string& synset) const;

 private:
  std::set<std::string> nodes_;
  std::map<std::string, std::string> parent_;
  std::map<std::string, std::string> category_to_synset_;
};

/// Parses the taxonomy text format: a `hierarchy` section of
/// "child parent" lines followed by a `categories` section of
/// "category synset" lines. '#' starts a comment.
Taxonomy load_taxonomy(std::string_view source);

/// Binding from activity terms to scene instance ids (object or room ids).
struct GroundScope {
  std::map<std::string, std::string> bindings;

  const std::string& instance_of(const std::string& term) const;
  bool is_bound(const std::string& term) const { return bindings.count(term) > 0; }
};

/// Checks injectivity and instance existence against the scene.
void validate_scope(const GroundScope& scope, const SceneState& scene);

/// All scene instances whose category's synset satisfies is_a(., synset), in
/// sorted-id order. Rooms are instances of the reserved "floor" category.
std::vector<std::string> candidate_instances(const Taxonomy& taxonomy,
                                             const std::string& synset,
                                             const SceneState& scene);

/// Binds each declared term to a distinct candidate instance of its synset.
/// Seeded-random among valid injective assignments (greedy with
/// backtracking); deterministic given seed. Throws UnsatisfiableError when no
/// injective assignment exists.
GroundScope ground_terms(const Activity& activity, const Taxonomy& taxonomy,
                         const SceneState& scene, std::uint64_t seed);

/// ground_terms restricted by extra per-term candidate filters (used by the
/// sampler for inroom directives). Terms absent from `restrict_to` use the
/// full candidate list.
GroundScope ground_terms_restricted(
    const Activity& activity, const Taxonomy& taxonomy, const SceneState& scene,
    std::uint64_t seed,
    const std::map<std::string, std::set<std::string>>& restrict_to);

}  // namespace bddl

#endif  // BDDL_TAXONOMY_HPP
