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

#include "bddl/predicates.hpp"

#include <cmath>

#include "bddl/errors.hpp"

namespace bddl {

std::optional<PredicateKind> predicate_from_name(const std::string& name) {
  if (name == "nextto") return PredicateKind::NextTo;
  if (name == "inside") return PredicateKind::Inside;
  if (name == "onfloor") return PredicateKind::OnFloor;
  if (name == "ontop") return PredicateKind::OnTop;
  if (name == "touching") return PredicateKind::Touching;
  if (name == "under") return PredicateKind::Under;
  return std::nullopt;
}

const char* predicate_name(PredicateKind kind) {
  switch (kind) {
    case PredicateKind::NextTo: return "nextto";
    case PredicateKind::Inside: return "inside";
    case PredicateKind::OnFloor: return "onfloor";
    case PredicateKind::OnTop: return "ontop";
    case PredicateKind::Touching: return "touching";
    case PredicateKind::Under: return "under";
  }
  return "?";
}

void PredicateParams::validate() const {
  if (touch_epsilon <= 0 || support_gap <= 0 || nextto_scale <= 0) {
    throw FormatError("predicate_params", "thresholds must be positive");
  }
  if (footprint_ratio <= 0 || footprint_ratio > 1 || inside_ratio <= 0 ||
      inside_ratio > 1) {
    throw FormatError("predicate_params", "ratios must be in (0, 1]");
  }
}

bool touching(const SceneObject& a, const SceneObject& b, const PredicateParams& p) {
  if (a.id == b.id) return false;
  return gap_distance(world_aabb(a), world_aabb(b)) <= p.touch_epsilon;
}

bool next_to(const SceneObject& a, const SceneObject& b, const PredicateParams& p) {
  if (a.id == b.id) return false;
  const Aabb box_a = world_aabb(a);
  const Aabb box_b = world_aabb(b);
  const double threshold =
      p.nextto_scale * std::min(box_a.xy_diagonal(), box_b.xy_diagonal());
  return gap_distance(box_a, box_b) <= threshold;
}

bool on_top(const SceneObject& a, const SceneObject& b, const PredicateParams& p) {
  if (a.id == b.id) return false;
  const Aabb box_a = world_aabb(a);
  const Aabb box_b = world_aabb(b);
  if (horizontal_overlap_ratio(box_a, box_b) < p.footprint_ratio) return false;
  const double rise = box_a.min.z() - box_b.max.z();
  if (rise < 0.0 || rise > p.support_gap) return false;
  return !inside(a, b, p);
}

bool under(const SceneObject& a, const SceneObject& b, const PredicateParams& p) {
  if (a.id == b.id) return false;
  const Aabb box_a = world_aabb(a);
  const Aabb box_b = world_aabb(b);
  if (horizontal_overlap_ratio(box_a, box_b) < p.footprint_ratio) return false;
  return box_a.max.z() <= box_b.min.z() + p.support_gap;
}

bool inside(const SceneObject& a, const SceneObject& b, const PredicateParams& p) {
  if (a.id == b.id) return false;
  const Aabb box_a = world_aabb(a);
  const Aabb box_b = world_aabb(b);
  const double ratio = intersection_volume(box_a, box_b) / box_a.volume();
  return ratio >= p.inside_ratio;
}

bool on_floor(const SceneObject& a, const Room& room, const PredicateParams& p) {
  const Aabb box_a = world_aabb(a);
  if (std::abs(box_a.min.z() - room.floor_z) > p.support_gap) return false;
  const Eigen::Vector2d center{(box_a.min.x() + box_a.max.x()) / 2.0,
                               (box_a.min.y() + box_a.max.y()) / 2.0};
  return point_in_polygon(center, room.floor_polygon);
}

bool eval_ground(const std::string& predicate, const std::string& first,
                 const std::string& second, const SceneState& scene,
                 const PredicateParams& p) {
  const auto kind = predicate_from_name(predicate);
  if (!kind) throw UnknownPredicateError(predicate);
  const SceneObject& a = scene.object(first);

  if (*kind == PredicateKind::OnFloor) {
    return on_floor(a, scene.room(second), p);
  }
  const SceneObject& b = scene.object(second);
  switch (*kind) {
    case PredicateKind::NextTo: return next_to(a, b, p);
    case PredicateKind::Inside: return inside(a, b, p);
    case PredicateKind::OnTop: return on_top(a, b, p);
    case PredicateKind::Touching: return touching(a, b, p);
    case PredicateKind::Under: return under(a, b, p);
    case PredicateKind::OnFloor: break;  // handled above
  }
  throw UnknownPredicateError(predicate);
}

bool eval_atom(const Condition& atom, const GroundScope& scope,
               const SceneState& scene, const PredicateParams& p) {
  if (predicate_from_name(atom.predicate) == std::nullopt) {
    throw UnknownPredicateError(atom.predicate);
  }
  if (atom.args.size() != 2) {
    throw UnknownPredicateError(atom.predicate + "/" +
                                std::to_string(atom.args.size()));
  }
  const std::string& first = scope.instance_of(atom.args[0]);
  const std::string& second = scope.instance_of(atom.args[1]);
  return eval_ground(atom.predicate, first, second, scene, p);
}

}  // namespace bddl
