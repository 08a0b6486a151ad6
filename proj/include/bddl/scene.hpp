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

#ifndef BDDL_SCENE_HPP
#define BDDL_SCENE_HPP

#include <Eigen/Geometry>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bddl {

/// Rigid-body pose: position in meters, unit quaternion orientation.
struct Pose {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Quaterniond orientation = Eigen::Quaterniond::Identity();
};

bool operator==(const Pose& a, const Pose& b);

/// An object-level kinematic state carrier: the local collision geometry is
/// an axis-aligned box of the given half extents centered at the pose.
struct SceneObject {
  std::string id;
  std::string category;
  Pose pose;
  Eigen::Vector3d half_extents = Eigen::Vector3d::Ones();
  std::optional<std::string> room_id;
};

bool operator==(const SceneObject& a, const SceneObject& b);

/// 2.5D room: a simple counterclockwise floor polygon at elevation floor_z.
struct Room {
  std::string id;
  std::vector<Eigen::Vector2d> floor_polygon;
  double floor_z = 0.0;
};

bool operator==(const Room& a, const Room& b);

/// Immutable world snapshot. Maps keep ids in deterministic sorted order.
struct SceneState {
  std::map<std::string, SceneObject> objects;
  std::map<std::string, Room> rooms;

  const SceneObject& object(const std::string& id) const;
  const Room& room(const std::string& id) const;
  bool has_object(const std::string& id) const { return objects.count(id) > 0; }
  bool has_room(const std::string& id) const { return rooms.count(id) > 0; }
};

bool operator==(const SceneState& a, const SceneState& b);

struct Aabb {
  Eigen::Vector3d min = Eigen::Vector3d::Zero();
  Eigen::Vector3d max = Eigen::Vector3d::Zero();

  Eigen::Vector3d extents() const { return max - min; }
  double volume() const { return extents().prod(); }
  double footprint_area() const {
    return (max.x() - min.x()) * (max.y() - min.y());
  }
  double xy_diagonal() const {
    return std::hypot(max.x() - min.x(), max.y() - min.y());
  }
};

/// Parses the scene JSON format: top-level "objects" (id, category, position
/// [x,y,z], orientation [w,x,y,z], half_extents [x,y,z], optional room) and
/// "rooms" (id, floor_z, polygon [[x,y],...]).
/// Throws FormatError on malformed input, InvariantViolationError when a
/// record violates the scene invariants.
SceneState load_scene(std::string_view source);

/// Serializes a snapshot back to the scene JSON format (sorted ids, so the
/// output is byte-stable for equal states).
std::string scene_to_json(const SceneState& scene);

/// Tightest world axis-aligned box containing the object's rotated local box:
/// per world axis i the half extent is sum_j |R_ij| * half_extents_j.
Aabb world_aabb(const SceneObject& object);

/// Euclidean distance between closest points of two boxes; 0 iff they
/// intersect or touch.
double gap_distance(const Aabb& a, const Aabb& b);

/// Area of the xy intersection of a and b divided by a's xy footprint area.
/// a must have positive footprint area.
double horizontal_overlap_ratio(const Aabb& a, const Aabb& b);

double intersection_volume(const Aabb& a, const Aabb& b);

/// Returns a new snapshot with the given poses applied; the input is
/// unchanged. Throws UnknownObjectError for ids absent from the scene.
SceneState apply_frame(const SceneState& scene,
                       const std::map<std::string, Pose>& frame);

/// Even-odd containment test; boundary points count as inside.
bool point_in_polygon(const Eigen::Vector2d& point,
                      const std::vector<Eigen::Vector2d>& polygon);

/// Twice the signed area (positive for counterclockwise winding).
double polygon_signed_area(const std::vector<Eigen::Vector2d>& polygon);

/// One trajectory frame: index plus poses to apply.
struct TrajectoryFrame {
  long t = 0;
  std::map<std::string, Pose> poses;
};

/// Parses JSON Lines trajectory text, one frame per line:
/// {"t": <index>, "poses": {"<id>": {"position": [...], "orientation": [...]}}}
std::vector<TrajectoryFrame> load_trajectory(std::string_view source);

}  // namespace bddl

#endif  // BDDL_SCENE_HPP
