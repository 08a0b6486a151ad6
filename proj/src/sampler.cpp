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

#include "bddl/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

#include "bddl/errors.hpp"
#include "bddl/logic.hpp"
#include "bddl/parser.hpp"
#include "bddl/rng.hpp"

namespace bddl {

namespace {

using Json = nlohmann::ordered_json;

constexpr double kOverlapVolumeEpsilon = 1e-12;

bool is_positive_kinematic(const Condition& entry) {
  return entry.kind == ConditionKind::Atom &&
         kinematic_predicates().count(entry.predicate) > 0;
}

bool is_inroom_directive(const Condition& entry) {
  return entry.kind == ConditionKind::Atom &&
         entry.predicate == kInRoomPredicate;
}

bool is_negative(const Condition& entry) {
  return entry.kind == ConditionKind::Not;
}

struct PlacementState {
  const Activity& activity;
  const Taxonomy& taxonomy;
  const SamplerParams& params;
  const PredicateParams& preds;
  SceneState scene;
  GroundScope scope;
  // instance id -> term, for the interpenetration exemption lookup
  std::map<std::string, std::string> term_of_instance;
  // movable instances that already have their final pose
  std::set<std::string> placed;
  // positive kinematic atoms already satisfied, re-checked on every draw
  std::vector<Condition> satisfied_atoms;
  // negative kinematic atoms, enforced as global filters
  std::vector<Condition> negative_atoms;
  // pairs of terms related by inside/ontop atoms (exempt from overlap rule)
  std::set<std::pair<std::string, std::string>> overlap_exempt;

  bool pair_exempt(const std::string& inst_a, const std::string& inst_b) const {
    const auto ta = term_of_instance.find(inst_a);
    const auto tb = term_of_instance.find(inst_b);
    if (ta == term_of_instance.end() || tb == term_of_instance.end()) {
      return false;
    }
    return overlap_exempt.count({ta->second, tb->second}) > 0 ||
           overlap_exempt.count({tb->second, ta->second}) > 0;
  }

  bool placement_consistent(const std::string& subject_instance) {
    // The current atom's own predicate is checked by the caller.
    for (const auto& atom : satisfied_atoms) {
      if (!eval_ground(atom.predicate, scope.instance_of(atom.args[0]),
                       scope.instance_of(atom.args[1]), scene, preds)) {
        return false;
      }
    }
    for (const auto& neg : negative_atoms) {
      const Condition& atom = neg.children[0];
      if (eval_ground(atom.predicate, scope.instance_of(atom.args[0]),
                      scope.instance_of(atom.args[1]), scene, preds)) {
        return false;
      }
    }
    // No interpenetration between placed movables unless an inside/ontop
    // atom relates the pair.
    const Aabb subject_box = world_aabb(scene.object(subject_instance));
    for (const auto& other : placed) {
      if (other == subject_instance) continue;
      if (pair_exempt(subject_instance, other)) continue;
      if (intersection_volume(subject_box, world_aabb(scene.object(other))) >
          kOverlapVolumeEpsilon) {
        return false;
      }
    }
    return true;
  }

  void set_position(const std::string& instance, const Eigen::Vector3d& position) {
    scene.objects.at(instance).pose.position = position;
  }

  void finalize_room(const std::string& instance) {
    SceneObject& object = scene.objects.at(instance);
    const Aabb box = world_aabb(object);
    const Eigen::Vector2d center{(box.min.x() + box.max.x()) / 2.0,
                                 (box.min.y() + box.max.y()) / 2.0};
    for (const auto& [room_id, room] : scene.rooms) {
      if (point_in_polygon(center, room.floor_polygon)) {
        object.room_id = room_id;
        return;
      }
    }
  }
};

// Finds the room whose polygon contains the reference box's xy center and
// whose floor the reference is resting on (within 5 cm), if any.
std::optional<std::string> resting_room(const SceneState& scene, const Aabb& box) {
  const Eigen::Vector2d center{(box.min.x() + box.max.x()) / 2.0,
                               (box.min.y() + box.max.y()) / 2.0};
  for (const auto& [room_id, room] : scene.rooms) {
    if (std::abs(box.min.z() - room.floor_z) <= 0.05 &&
        point_in_polygon(center, room.floor_polygon)) {
      return room_id;
    }
  }
  return std::nullopt;
}

}  // namespace

void SamplerParams::validate() const {
  if (max_attempts_per_atom < 1) {
    throw FormatError("sampler_params", "max_attempts_per_atom must be >= 1");
  }
  if (clearance < 0) {
    throw FormatError("sampler_params", "clearance must be >= 0");
  }
}

ObjectLibrary load_object_library(std::string_view source) {
  Json root;
  try {
    root = Json::parse(source);
  } catch (const Json::parse_error& e) {
    throw FormatError("object_library", e.what());
  }
  if (!root.is_object()) {
    throw FormatError("object_library", "expected a JSON object");
  }
  ObjectLibrary library;
  for (const auto& [synset, extents] : root.items()) {
    if (!extents.is_array() || extents.size() != 3) {
      throw FormatError("object_library." + synset, "expected [hx, hy, hz]");
    }
    const Eigen::Vector3d he{extents[0].get<double>(), extents[1].get<double>(),
                             extents[2].get<double>()};
    if ((he.array() <= 0.0).any()) {
      throw FormatError("object_library." + synset, "half extents must be positive");
    }
    library[synset] = he;
  }
  return library;
}

std::vector<Condition> order_constraints(const std::vector<Condition>& init) {
  std::vector<Condition> directives;
  std::vector<Condition> positives;
  std::vector<Condition> negatives;
  for (const auto& entry : init) {
    if (is_inroom_directive(entry)) {
      directives.push_back(entry);
    } else if (is_negative(entry)) {
      negatives.push_back(entry);
    } else {
      positives.push_back(entry);
    }
  }

  // Support edges only exist between kinematic placement atoms: atom j
  // placing X must run before atom i placed relative to X.
  const std::size_t n = positives.size();
  std::vector<std::vector<std::size_t>> dependents(n);
  std::vector<int> pending(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_positive_kinematic(positives[i])) continue;
    const std::string& reference = positives[i].args[1];
    for (std::size_t j = 0; j < n; ++j) {
      if (!is_positive_kinematic(positives[j])) continue;
      if (positives[j].args[0] == reference) {
        dependents[j].push_back(i);
        ++pending[i];
      }
    }
  }

  std::vector<Condition> ordered = std::move(directives);
  std::vector<bool> emitted(n, false);
  bool progress = true;
  std::size_t emitted_count = 0;
  while (progress) {
    progress = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (emitted[i] || pending[i] > 0) continue;
      emitted[i] = true;
      ++emitted_count;
      ordered.push_back(positives[i]);
      for (const std::size_t dep : dependents[i]) --pending[dep];
      progress = true;
    }
  }
  if (emitted_count != n) {
    std::vector<std::string> cycle;
    for (std::size_t i = 0; i < n; ++i) {
      if (!emitted[i]) cycle.push_back(condition_to_sexpr(positives[i]));
    }
    throw CyclicSupportError(std::move(cycle));
  }
  ordered.insert(ordered.end(), negatives.begin(), negatives.end());
  return ordered;
}

namespace {

struct RegionDraw {
  Eigen::Vector3d position;
  bool in_region = true;  // false when the draw must be rejected outright
};

// Uniform draw from the feasible region implied by the atom's geometry.
// half = the subject's world half extents (orientation is kept fixed).
RegionDraw draw_placement(const Condition& atom, const Eigen::Vector3d& half,
                          const SceneState& scene, const GroundScope& scope,
                          const SamplerParams& params,
                          const PredicateParams& preds, Rng& rng) {
  const auto kind = predicate_from_name(atom.predicate);
  const std::string& reference_id = scope.instance_of(atom.args[1]);

  if (*kind == PredicateKind::OnFloor) {
    const Room& room = scene.room(reference_id);
    Eigen::Vector2d lo = room.floor_polygon.front();
    Eigen::Vector2d hi = lo;
    for (const auto& v : room.floor_polygon) {
      lo = lo.cwiseMin(v);
      hi = hi.cwiseMax(v);
    }
    const Eigen::Vector2d xy{rng.uniform(lo.x(), hi.x()), rng.uniform(lo.y(), hi.y())};
    RegionDraw draw;
    draw.position = {xy.x(), xy.y(), room.floor_z + params.clearance + half.z()};
    draw.in_region = point_in_polygon(xy, room.floor_polygon);
    return draw;
  }

  const Aabb ref = world_aabb(scene.object(reference_id));

  auto floor_or_plane_z = [&](double default_plane_min_z) {
    const auto room_id = resting_room(scene, ref);
    if (room_id) {
      return scene.room(*room_id).floor_z + params.clearance + half.z();
    }
    return default_plane_min_z + half.z();
  };

  switch (*kind) {
    case PredicateKind::OnTop: {
      const double lox = ref.min.x() + half.x();
      const double hix = ref.max.x() - half.x();
      const double loy = ref.min.y() + half.y();
      const double hiy = ref.max.y() - half.y();
      if (lox > hix || loy > hiy) return {Eigen::Vector3d::Zero(), false};
      return {{rng.uniform(lox, hix), rng.uniform(loy, hiy),
               ref.max.z() + params.clearance + half.z()},
              true};
    }
    case PredicateKind::Inside: {
      Eigen::Vector3d lo = ref.min + half;
      Eigen::Vector3d hi = ref.max - half;
      if ((lo.array() > hi.array()).any()) return {Eigen::Vector3d::Zero(), false};
      return {{rng.uniform(lo.x(), hi.x()), rng.uniform(lo.y(), hi.y()),
               rng.uniform(lo.z(), hi.z())},
              true};
    }
    case PredicateKind::Under: {
      const double lox = ref.min.x() + half.x();
      const double hix = ref.max.x() - half.x();
      const double loy = ref.min.y() + half.y();
      const double hiy = ref.max.y() - half.y();
      if (lox > hix || loy > hiy) return {Eigen::Vector3d::Zero(), false};
      const auto room_id = resting_room(scene, ref);
      double z;
      if (room_id) {
        // Reference rests on the floor; slide the subject under it from the
        // floor plane.
        z = scene.room(*room_id).floor_z + params.clearance + half.z();
      } else {
        z = ref.min.z() - half.z();
      }
      return {{rng.uniform(lox, hix), rng.uniform(loy, hiy), z}, true};
    }
    case PredicateKind::NextTo:
    case PredicateKind::Touching: {
      const Aabb subject_box{-half, half};
      double gap = 0.0;
      if (*kind == PredicateKind::NextTo) {
        const double threshold =
            preds.nextto_scale *
            std::min(subject_box.xy_diagonal(), ref.xy_diagonal());
        gap = rng.uniform(0.0, 0.9 * threshold);
      }
      const std::size_t side = rng.uniform_index(4);
      double x;
      double y;
      if (side < 2) {
        x = side == 0 ? ref.max.x() + gap + half.x() : ref.min.x() - gap - half.x();
        y = rng.uniform(ref.min.y(), ref.max.y());
      } else {
        x = rng.uniform(ref.min.x(), ref.max.x());
        y = side == 2 ? ref.max.y() + gap + half.y() : ref.min.y() - gap - half.y();
      }
      return {{x, y, floor_or_plane_z(ref.min.z())}, true};
    }
    default:
      throw UnknownPredicateError(atom.predicate);
  }
}

}  // namespace

SampledInstance sample_instance(const Activity& activity,
                                const SceneState& base_scene,
                                const Taxonomy& taxonomy,
                                const ObjectLibrary& library,
                                const SamplerParams& params,
                                const PredicateParams& predicate_params) {
  params.validate();
  predicate_params.validate();
  const KinematicClassification classification = classify_kinematic(activity);
  if (!classification.kinematic_only) {
    throw UnknownPredicateError(classification.unsupported_predicates.front());
  }

  Rng rng(params.seed);

  // inroom directives: term -> room id.
  std::map<std::string, std::string> room_of_term;
  for (const auto& entry : activity.init) {
    if (!is_inroom_directive(entry)) continue;
    const std::string& term = entry.args[0];
    const std::string& room = entry.args[1];
    if (!base_scene.has_room(room)) throw UnknownObjectError(room);
    const auto [it, inserted] = room_of_term.emplace(term, room);
    if (!inserted && it->second != room) {
      throw FormatError("init", "conflicting inroom directives for " + term);
    }
  }

  // Grounding: terms with scene candidates bind to instances (restricted by
  // inroom); terms without candidates are spawned from the object library.
  std::map<std::string, std::set<std::string>> restriction;
  std::vector<ObjectDecl> spawned;
  SceneState scene = base_scene;
  Activity groundable = activity;  // objects list trimmed to non-spawned terms

  for (const auto& decl : activity.objects) {
    std::vector<std::string> candidates =
        candidate_instances(taxonomy, decl.synset, scene);
    const auto directive = room_of_term.find(decl.term);
    if (directive != room_of_term.end()) {
      std::set<std::string> allowed;
      for (const auto& id : candidates) {
        if (scene.has_room(id)) {
          if (id == directive->second) allowed.insert(id);
        } else if (scene.object(id).room_id == directive->second) {
          allowed.insert(id);
        }
      }
      restriction[decl.term] = std::move(allowed);
    }
  }

  std::erase_if(groundable.objects, [&](const ObjectDecl& decl) {
    std::vector<std::string> candidates =
        candidate_instances(taxonomy, decl.synset, scene);
    const auto filter = restriction.find(decl.term);
    if (filter != restriction.end()) {
      std::erase_if(candidates, [&](const std::string& id) {
        return filter->second.count(id) == 0;
      });
    }
    if (!candidates.empty()) return false;
    spawned.push_back(decl);
    return true;
  });

  GroundScope scope;
  if (!groundable.objects.empty()) {
    scope = ground_terms_restricted(groundable, taxonomy, scene, rng.next(),
                                    restriction);
  }

  // Spawn missing objects far below the scene; atoms place them later.
  int staging_slot = 0;
  for (const ObjectDecl& decl : spawned) {
    const auto entry = library.find(decl.synset);
    if (entry == library.end()) throw UnknownSynsetError(decl.synset);
    SceneObject object;
    object.id = decl.term;
    while (scene.has_object(object.id) || scene.has_room(object.id)) {
      object.id += "@spawn";
    }
    object.category = taxonomy.category_for_synset(decl.synset);
    object.half_extents = entry->second;
    object.pose.position = {3.0 * staging_slot, 0.0, -100.0 - 10.0 * staging_slot};
    const auto directive = room_of_term.find(decl.term);
    if (directive != room_of_term.end()) object.room_id = directive->second;
    scene.objects.emplace(object.id, object);
    scope.bindings[decl.term] = object.id;
    ++staging_slot;
  }
  validate_scope(scope, scene);

  PlacementState state{activity, taxonomy, params, predicate_params,
                       std::move(scene), std::move(scope)};
  for (const auto& [term, instance] : state.scope.bindings) {
    state.term_of_instance[instance] = term;
  }

  const std::vector<Condition> ordered = order_constraints(activity.init);
  std::set<std::string> placed_terms;
  for (const auto& entry : ordered) {
    if (is_positive_kinematic(entry)) placed_terms.insert(entry.args[0]);
    if (is_negative(entry)) state.negative_atoms.push_back(entry);
    if (is_negative(entry) &&
        entry.children[0].predicate == kInRoomPredicate) {
      state.negative_atoms.pop_back();  // directives are not evaluable
    }
  }
  for (const auto& entry : ordered) {
    if (!is_positive_kinematic(entry)) continue;
    if (entry.predicate == "inside" || entry.predicate == "ontop") {
      state.overlap_exempt.insert({entry.args[0], entry.args[1]});
    }
  }

  // Spawned objects no placement atom mentions get a floor spot in their
  // directive room (or the first room) before constrained placement runs.
  for (const ObjectDecl& decl : spawned) {
    if (placed_terms.count(decl.term) > 0) continue;
    const std::string& instance = state.scope.instance_of(decl.term);
    const auto directive = room_of_term.find(decl.term);
    const std::string room_id = directive != room_of_term.end()
                                    ? directive->second
                                    : state.scene.rooms.begin()->first;
    Condition floor_atom = Condition::atom("onfloor", {decl.term, "@room"});
    GroundScope floor_scope = state.scope;
    floor_scope.bindings["@room"] = room_id;
    const Eigen::Vector3d half =
        0.5 * world_aabb(state.scene.object(instance)).extents();
    bool done = false;
    for (int attempt = 0; attempt < params.max_attempts_per_atom; ++attempt) {
      const RegionDraw draw =
          draw_placement(floor_atom, half, state.scene, floor_scope, params,
                         predicate_params, rng);
      if (!draw.in_region) continue;
      state.set_position(instance, draw.position);
      if (state.placement_consistent(instance)) {
        done = true;
        break;
      }
    }
    if (!done) {
      throw SamplingFailedError("(onfloor " + decl.term + " " + room_id + ")",
                                params.max_attempts_per_atom);
    }
    state.placed.insert(instance);
    state.finalize_room(instance);
  }

  // Constrained placement in support order.
  for (const auto& entry : ordered) {
    if (!is_positive_kinematic(entry)) continue;
    const std::string& subject = state.scope.instance_of(entry.args[0]);
    if (!state.scene.has_object(subject)) {
      throw UnknownObjectError(subject);  // e.g. a floor term used as subject
    }
    const Eigen::Vector3d half =
        0.5 * world_aabb(state.scene.object(subject)).extents();
    const Eigen::Vector3d original =
        state.scene.object(subject).pose.position;
    bool done = false;
    for (int attempt = 0; attempt < params.max_attempts_per_atom; ++attempt) {
      const RegionDraw draw = draw_placement(entry, half, state.scene,
                                             state.scope, params,
                                             predicate_params, rng);
      if (!draw.in_region) continue;
      state.set_position(subject, draw.position);
      if (!eval_ground(entry.predicate, subject,
                       state.scope.instance_of(entry.args[1]), state.scene,
                       predicate_params)) {
        continue;
      }
      if (state.placement_consistent(subject)) {
        done = true;
        break;
      }
    }
    if (!done) {
      state.set_position(subject, original);
      throw SamplingFailedError(condition_to_sexpr(entry),
                                params.max_attempts_per_atom);
    }
    state.placed.insert(subject);
    state.satisfied_atoms.push_back(entry);
    state.finalize_room(subject);
  }

  SampledInstance instance;
  instance.scene = std::move(state.scene);
  instance.scope = std::move(state.scope);
  instance.activity_name = activity.problem_name;
  instance.seed = params.seed;

  const GoalReport report = check_init(activity, instance.scope, taxonomy,
                                       instance.scene, predicate_params);
  if (report.q_score < 1.0) {
    std::vector<std::string> failed;
    for (const auto& leaf : report.leaf_results) {
      if (!leaf.ok) failed.push_back(leaf.expr);
    }
    throw InitViolatedError(std::move(failed));
  }
  return instance;
}

PresampledLoad load_presampled(const Activity& activity,
                               std::string_view scene_source,
                               std::string_view scope_source,
                               const Taxonomy& taxonomy,
                               const PredicateParams& predicate_params,
                               bool strict) {
  PresampledLoad result;
  result.instance.scene = load_scene(scene_source);
  result.instance.scope = scope_from_json(scope_source);
  result.instance.activity_name = activity.problem_name;
  validate_scope(result.instance.scope, result.instance.scene);
  for (const auto& decl : activity.objects) {
    if (!result.instance.scope.is_bound(decl.term)) {
      throw FormatError("scope", "term " + decl.term + " is not bound");
    }
  }

  const GoalReport report =
      check_init(activity, result.instance.scope, taxonomy,
                 result.instance.scene, predicate_params);
  if (report.q_score < 1.0) {
    std::vector<std::string> failed;
    for (const auto& leaf : report.leaf_results) {
      if (!leaf.ok) failed.push_back(leaf.expr);
    }
    if (strict) throw InitViolatedError(std::move(failed));
    std::string warning = "init re-check scored " + std::to_string(report.q_score);
    for (const auto& expr : failed) warning += "; failed " + expr;
    result.warning = warning;
  }
  return result;
}

std::string scope_to_json(const GroundScope& scope) {
  Json j = Json::object();
  for (const auto& [term, instance] : scope.bindings) {
    j[term] = instance;
  }
  return j.dump(2) + "\n";
}

GroundScope scope_from_json(std::string_view source) {
  Json j;
  try {
    j = Json::parse(source);
  } catch (const Json::parse_error& e) {
    throw FormatError("scope", e.what());
  }
  if (!j.is_object()) throw FormatError("scope", "expected a JSON object");
  GroundScope scope;
  for (const auto& [term, instance] : j.items()) {
    if (!instance.is_string()) {
      throw FormatError("scope." + term, "instance id must be a string");
    }
    scope.bindings[term] = instance.get<std::string>();
  }
  return scope;
}

}  // namespace bddl
