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

#include "bddl/scene.hpp"

#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "bddl/errors.hpp"

namespace bddl {

namespace {

using Json = nlohmann::ordered_json;

constexpr double kQuaternionNormTolerance = 1e-6;
constexpr double kOnSegmentTolerance = 1e-12;

Eigen::Vector3d parse_vec3(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) {
    throw FormatError(where, "expected a 3-element array");
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

Pose parse_pose(const Json& j, const std::string& where) {
  Pose pose;
  if (!j.contains("position") || !j.contains("orientation")) {
    throw FormatError(where, "pose requires position and orientation");
  }
  pose.position = parse_vec3(j["position"], where + ".position");
  const Json& q = j["orientation"];
  if (!q.is_array() || q.size() != 4) {
    throw FormatError(where + ".orientation", "expected [w,x,y,z]");
  }
  pose.orientation = Eigen::Quaterniond(q[0].get<double>(), q[1].get<double>(),
                                        q[2].get<double>(), q[3].get<double>());
  return pose;
}

void check_quaternion(const std::string& id, Pose& pose) {
  const double norm = pose.orientation.norm();
  if (std::abs(norm - 1.0) > kQuaternionNormTolerance) {
    throw InvariantViolationError(
        id, "orientation norm " + std::to_string(norm) + " is not 1");
  }
  pose.orientation.normalize();
}

void check_polygon(const Room& room) {
  const auto& poly = room.floor_polygon;
  if (poly.size() < 3) {
    throw InvariantViolationError(room.id, "floor polygon needs >= 3 vertices");
  }
  if (polygon_signed_area(poly) <= 0.0) {
    throw InvariantViolationError(room.id,
                                  "floor polygon must be counterclockwise");
  }
  // Simplicity: no two non-adjacent edges may intersect.
  const std::size_t n = poly.size();
  auto segments_intersect = [](const Eigen::Vector2d& p1, const Eigen::Vector2d& p2,
                               const Eigen::Vector2d& q1, const Eigen::Vector2d& q2) {
    auto cross = [](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
      return a.x() * b.y() - a.y() * b.x();
    };
    const double d1 = cross(p2 - p1, q1 - p1);
    const double d2 = cross(p2 - p1, q2 - p1);
    const double d3 = cross(q2 - q1, p1 - q1);
    const double d4 = cross(q2 - q1, p2 - q1);
    return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) continue;
      if (segments_intersect(poly[i], poly[(i + 1) % n], poly[j],
                             poly[(j + 1) % n])) {
        throw InvariantViolationError(room.id, "floor polygon self-intersects");
      }
    }
  }
}

Json pose_to_json(const Pose& pose) {
  Json j;
  j["position"] = {pose.position.x(), pose.position.y(), pose.position.z()};
  j["orientation"] = {pose.orientation.w(), pose.orientation.x(),
                      pose.orientation.y(), pose.orientation.z()};
  return j;
}

bool point_on_segment(const Eigen::Vector2d& p, const Eigen::Vector2d& a,
                      const Eigen::Vector2d& b) {
  const Eigen::Vector2d ab = b - a;
  const Eigen::Vector2d ap = p - a;
  const double cross = ab.x() * ap.y() - ab.y() * ap.x();
  if (std::abs(cross) > kOnSegmentTolerance * std::max(1.0, ab.norm())) {
    return false;
  }
  const double dot = ap.dot(ab);
  return dot >= -kOnSegmentTolerance && dot <= ab.squaredNorm() + kOnSegmentTolerance;
}

}  // namespace

bool operator==(const Pose& a, const Pose& b) {
  return a.position == b.position &&
         a.orientation.coeffs() == b.orientation.coeffs();
}

bool operator==(const SceneObject& a, const SceneObject& b) {
  return a.id == b.id && a.category == b.category && a.pose == b.pose &&
         a.half_extents == b.half_extents && a.room_id == b.room_id;
}

bool operator==(const Room& a, const Room& b) {
  return a.id == b.id && a.floor_polygon == b.floor_polygon &&
         a.floor_z == b.floor_z;
}

bool operator==(const SceneState& a, const SceneState& b) {
  return a.objects == b.objects && a.rooms == b.rooms;
}

const SceneObject& SceneState::object(const std::string& id) const {
  const auto it = objects.find(id);
  if (it == objects.end()) throw UnknownObjectError(id);
  return it->second;
}

const Room& SceneState::room(const std::string& id) const {
  const auto it = rooms.find(id);
  if (it == rooms.end()) throw UnknownObjectError(id);
  return it->second;
}

SceneState load_scene(std::string_view source) {
  Json root;
  try {
    root = Json::parse(source);
  } catch (const Json::parse_error& e) {
    throw FormatError("scene", e.what());
  }
  if (!root.is_object() || !root.contains("objects") || !root.contains("rooms")) {
    throw FormatError("scene", "expected top-level objects and rooms");
  }

  SceneState scene;
  for (const auto& jr : root["rooms"]) {
    Room room;
    try {
      room.id = jr.at("id").get<std::string>();
      room.floor_z = jr.at("floor_z").get<double>();
      for (const auto& v : jr.at("polygon")) {
        if (!v.is_array() || v.size() != 2) {
          throw FormatError("rooms." + room.id, "polygon vertices are [x,y]");
        }
        room.floor_polygon.emplace_back(v[0].get<double>(), v[1].get<double>());
      }
    } catch (const Json::exception& e) {
      throw FormatError("rooms", e.what());
    }
    check_polygon(room);
    if (!scene.rooms.emplace(room.id, std::move(room)).second) {
      throw FormatError("rooms", "duplicate room id");
    }
  }
  for (const auto& jo : root["objects"]) {
    SceneObject object;
    try {
      object.id = jo.at("id").get<std::string>();
      object.category = jo.at("category").get<std::string>();
      object.pose = parse_pose(jo, "objects." + object.id);
      object.half_extents =
          parse_vec3(jo.at("half_extents"), "objects." + object.id + ".half_extents");
      if (jo.contains("room") && !jo["room"].is_null()) {
        object.room_id = jo["room"].get<std::string>();
      }
    } catch (const Json::exception& e) {
      throw FormatError("objects", e.what());
    }
    if ((object.half_extents.array() <= 0.0).any()) {
      throw InvariantViolationError(object.id, "half_extents must be positive");
    }
    check_quaternion(object.id, object.pose);
    if (object.room_id && scene.rooms.count(*object.room_id) == 0) {
      throw InvariantViolationError(object.id,
                                    "room " + *object.room_id + " does not exist");
    }
    if (!scene.objects.emplace(object.id, std::move(object)).second) {
      throw FormatError("objects", "duplicate object id");
    }
  }
  return scene;
}

std::string scene_to_json(const SceneState& scene) {
  Json root;
  root["objects"] = Json::array();
  for (const auto& [id, object] : scene.objects) {
    Json jo;
    jo["id"] = id;
    jo["category"] = object.category;
    Json pose = pose_to_json(object.pose);
    jo["position"] = pose["position"];
    jo["orientation"] = pose["orientation"];
    jo["half_extents"] = {object.half_extents.x(), object.half_extents.y(),
                          object.half_extents.z()};
    if (object.room_id) jo["room"] = *object.room_id;
    root["objects"].push_back(std::move(jo));
  }
  root["rooms"] = Json::array();
  for (const auto& [id, room] : scene.rooms) {
    Json jr;
    jr["id"] = id;
    jr["floor_z"] = room.floor_z;
    jr["polygon"] = Json::array();
    for (const auto& v : room.floor_polygon) {
      jr["polygon"].push_back({v.x(), v.y()});
    }
    root["rooms"].push_back(std::move(jr));
  }
  return root.dump(2) + "\n";
}

Aabb world_aabb(const SceneObject& object) {
  const Eigen::Matrix3d rotation = object.pose.orientation.toRotationMatrix();
  const Eigen::Vector3d extent = rotation.cwiseAbs() * object.half_extents;
  return {object.pose.position - extent, object.pose.position + extent};
}

double gap_distance(const Aabb& a, const Aabb& b) {
  const Eigen::Vector3d lower = (a.min - b.max).cwiseMax(b.min - a.max);
  return lower.cwiseMax(0.0).norm();
}

double horizontal_overlap_ratio(const Aabb& a, const Aabb& b) {
  const double ax = std::max(0.0, std::min(a.max.x(), b.max.x()) -
                                      std::max(a.min.x(), b.min.x()));
  const double ay = std::max(0.0, std::min(a.max.y(), b.max.y()) -
                                      std::max(a.min.y(), b.min.y()));
  return (ax * ay) / a.footprint_area();
}

double intersection_volume(const Aabb& a, const Aabb& b) {
  const Eigen::Vector3d lo = a.min.cwiseMax(b.min);
  const Eigen::Vector3d hi = a.max.cwiseMin(b.max);
  const Eigen::Vector3d edge = (hi - lo).cwiseMax(0.0);
  return edge.prod();
}

SceneState apply_frame(const SceneState& scene,
                       const std::map<std::string, Pose>& frame) {
  SceneState next = scene;
  for (const auto& [id, pose] : frame) {
    const auto it = next.objects.find(id);
    if (it == next.objects.end()) throw UnknownObjectError(id);
    Pose checked = pose;
    check_quaternion(id, checked);
    it->second.pose = checked;
  }
  return next;
}

double polygon_signed_area(const std::vector<Eigen::Vector2d>& polygon) {
  double twice_area = 0.0;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = polygon[i];
    const auto& q = polygon[(i + 1) % n];
    twice_area += p.x() * q.y() - q.x() * p.y();
  }
  return 0.5 * twice_area;
}

bool point_in_polygon(const Eigen::Vector2d& point,
                      const std::vector<Eigen::Vector2d>& polygon) {
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (point_on_segment(point, polygon[i], polygon[(i + 1) % n])) {
      return true;
    }
  }
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const auto& pi = polygon[i];
    const auto& pj = polygon[j];
    const bool crosses = (pi.y() > point.y()) != (pj.y() > point.y());
    if (crosses) {
      const double x_at =
          pj.x() + (pi.x() - pj.x()) * (point.y() - pj.y()) / (pi.y() - pj.y());
      if (point.x() < x_at) inside = !inside;
    }
  }
  return inside;
}

std::vector<TrajectoryFrame> load_trajectory(std::string_view source) {
  std::vector<TrajectoryFrame> frames;
  std::istringstream stream{std::string(source)};
  std::string line;
  long line_number = 0;
  while (std::getline(stream, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json j;
    try {
      j = Json::parse(line);
      TrajectoryFrame frame;
      frame.t = j.at("t").get<long>();
      for (const auto& [id, jp] : j.at("poses").items()) {
        frame.poses[id] = parse_pose(jp, "poses." + id);
      }
      frames.push_back(std::move(frame));
    } catch (const Json::exception& e) {
      throw FormatError("trajectory line " + std::to_string(line_number), e.what());
    }
  }
  return frames;
}

}  // namespace bddl
