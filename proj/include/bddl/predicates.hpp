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

#ifndef BDDL_PREDICATES_HPP
#define BDDL_PREDICATES_HPP

#include <optional>
#include <string>

#include "bddl/activity.hpp"
#include "bddl/scene.hpp"
#include "bddl/taxonomy.hpp"

namespace bddl {

enum class PredicateKind { NextTo, Inside, OnFloor, OnTop, Touching, Under };

std::optional<PredicateKind> predicate_from_name(const std::string& name);
const char* predicate_name(PredicateKind kind);

/// Geometry thresholds for the kinematic predicates. Engine defaults,
/// overridable through the engine configuration file.
struct PredicateParams {
  double touch_epsilon = 0.001;   // meters
  double support_gap = 0.02;      // meters
  double footprint_ratio = 0.5;   // of the subject's footprint
  double inside_ratio = 0.5;      // of the subject's volume
  double nextto_scale = 0.5;      // of the smaller footprint diagonal

  void validate() const;
};

// The six kinematic checks. All are functions of world AABBs only, so every
// decision is testable against closed-form or Monte-Carlo oracles. A
// predicate applied to one object twice (a.id == b.id) is false.

/// gap <= touch_epsilon.
bool touching(const SceneObject& a, const SceneObject& b, const PredicateParams& p);

/// gap <= nextto_scale * min(footprint diagonal of a, of b).
bool next_to(const SceneObject& a, const SceneObject& b, const PredicateParams& p);

/// a rests on b: footprint overlap >= footprint_ratio, vertical gap within
/// [0, support_gap], and not inside(a, b).
bool on_top(const SceneObject& a, const SceneObject& b, const PredicateParams& p);

/// a below b with footprint overlap >= footprint_ratio (measured against a);
/// contact not required.
bool under(const SceneObject& a, const SceneObject& b, const PredicateParams& p);

/// Intersection volume over a's volume >= inside_ratio (inclusive).
bool inside(const SceneObject& a, const SceneObject& b, const PredicateParams& p);

/// a's base is at the room's floor elevation (within support_gap) and a's
/// center lies in the floor polygon.
bool on_floor(const SceneObject& a, const Room& room, const PredicateParams& p);

/// Evaluates a ground atom against the scene: both args are resolved through
/// scope, then dispatched to the matching predicate (floor terms dispatch to
/// their Room). Throws UnboundTermError for free variables/unbound terms and
/// UnknownPredicateError for non-kinematic predicates (e.g. "cooked").
bool eval_atom(const Condition& atom, const GroundScope& scope,
               const SceneState& scene, const PredicateParams& p);

/// Dispatch on already-resolved instance ids.
bool eval_ground(const std::string& predicate, const std::string& first,
                 const std::string& second, const SceneState& scene,
                 const PredicateParams& p);

}  // namespace bddl

#endif  // BDDL_PREDICATES_HPP
