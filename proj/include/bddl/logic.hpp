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

#ifndef BDDL_LOGIC_HPP
#define BDDL_LOGIC_HPP

#include <functional>
#include <string>
#include <vector>

#include "bddl/activity.hpp"
#include "bddl/predicates.hpp"
#include "bddl/scene.hpp"
#include "bddl/taxonomy.hpp"

namespace bddl {

/// A ground atom: predicate over scene instance ids.
struct BoundAtom {
  std::string predicate;
  std::vector<std::string> instances;

  bool operator==(const BoundAtom&) const = default;
};

/// Condition compiled against a fixed scene universe. Quantifiers are
/// expanded into And/Or/AtLeastN over their candidate instances and negation
/// is pushed down to the leaves, so every leaf is a ground atom with a
/// polarity. Immutable once built.
struct CompiledCondition {
  enum class Kind { Constant, Leaf, And, Or, AtLeastN, Imply };

  Kind kind = Kind::Constant;
  bool constant_value = false;      // Constant
  bool negated = false;             // Leaf
  BoundAtom atom;                   // Leaf
  int leaf_index = -1;              // Leaf: occurrence index in document order
  int at_least = 0;                 // AtLeastN
  bool from_exists = false;         // Or: produced by an Exists expansion
  std::vector<CompiledCondition> children;

  /// Number of Leaf nodes in the subtree.
  int leaf_count() const;
};

/// Truth source for ground atoms. leaf_index identifies the occurrence, so
/// tests can flip individual leaves of one formula.
using AtomEvaluator = std::function<bool(int leaf_index, const BoundAtom&)>;

/// Builds the scene-backed evaluator used by evaluate/score_goal.
AtomEvaluator scene_evaluator(const SceneState& scene, const PredicateParams& p);

/// Expands condition against candidate-instance lists resolved now:
/// ForAll -> And, Exists -> Or (flagged), ForN -> at-least-n; vacuous ForAll
/// compiles to constant true, vacuous Exists to constant false. Non-quantified
/// terms must be bound in scope.
CompiledCondition compile(const Condition& condition, const GroundScope& scope,
                          const Taxonomy& taxonomy, const SceneState& scene);

bool evaluate(const CompiledCondition& compiled, const AtomEvaluator& atoms);
bool evaluate(const CompiledCondition& compiled, const SceneState& scene,
              const PredicateParams& p);

struct LeafResult {
  std::string expr;
  bool ok = false;

  bool operator==(const LeafResult&) const = default;
};

/// Per-leaf satisfaction plus the scalar partial-success score.
///
/// q_score is the satisfied fraction of selected leaves, where selection
/// walks the compiled tree: And/Or/AtLeastN contribute every child's leaves,
/// except an Exists-derived Or contributes only its best disjunct (maximal
/// satisfied-leaf count, ties to the lowest child index); Imply contributes
/// its consequent's leaves when the antecedent holds and one vacuously
/// satisfied leaf otherwise.
struct GoalReport {
  bool satisfied = false;
  std::vector<LeafResult> leaf_results;
  double q_score = 0.0;

  std::string to_json() const;
};

GoalReport score_goal(const CompiledCondition& compiled, const AtomEvaluator& atoms);
GoalReport score_goal(const CompiledCondition& compiled, const SceneState& scene,
                      const PredicateParams& p);

/// Scores the init list as a conjunction (negated atoms as Not leaves).
/// inroom directives are scene-binding metadata, not evaluable predicates,
/// and are skipped.
GoalReport check_init(const Activity& activity, const GroundScope& scope,
                      const Taxonomy& taxonomy, const SceneState& scene,
                      const PredicateParams& p);

/// The init list as one evaluable conjunction (inroom entries dropped).
Condition init_conjunction(const Activity& activity);

}  // namespace bddl

#endif  // BDDL_LOGIC_HPP
