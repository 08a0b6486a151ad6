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

#ifndef BDDL_TESTS_HELPERS_HPP
#define BDDL_TESTS_HELPERS_HPP

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "bddl/rng.hpp"
#include "bddl/scene.hpp"
#include "bddl/taxonomy.hpp"

namespace bddl::testing {

inline std::string data_dir() { return BDDLKIT_DATA_DIR; }

inline std::string data_path(const std::string& relative) {
  return (std::filesystem::path(BDDLKIT_DATA_DIR) / relative).string();
}

inline std::string read_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  std::stringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

inline std::vector<std::string> corpus_paths() {
  std::vector<std::string> paths;
  for (const auto& entry : std::filesystem::directory_iterator(
           std::filesystem::path(BDDLKIT_DATA_DIR) / "activities")) {
    paths.push_back((entry.path() / "problem0.bddl").string());
  }
  std::sort(paths.begin(), paths.end());
  return paths;
}

inline SceneObject make_box(const std::string& id, const Eigen::Vector3d& position,
                            const Eigen::Vector3d& half_extents,
                            const Eigen::Quaterniond& orientation =
                                Eigen::Quaterniond::Identity(),
                            const std::string& category = "thing") {
  SceneObject object;
  object.id = id;
  object.category = category;
  object.pose.position = position;
  object.pose.orientation = orientation.normalized();
  object.half_extents = half_extents;
  return object;
}

inline Eigen::Quaterniond random_quaternion(Rng& rng) {
  Eigen::Quaterniond q{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1),
                       rng.uniform(-1, 1)};
  if (q.norm() < 1e-3) return Eigen::Quaterniond::Identity();
  return q.normalized();
}

inline SceneObject random_box(Rng& rng, const std::string& id,
                              double span = 2.0) {
  return make_box(
      id,
      {rng.uniform(-span, span), rng.uniform(-span, span), rng.uniform(-span, span)},
      {rng.uniform(0.05, 1.0), rng.uniform(0.05, 1.0), rng.uniform(0.05, 1.0)},
      random_quaternion(rng));
}

inline Room square_room(const std::string& id, double size, double floor_z = 0.0) {
  Room room;
  room.id = id;
  room.floor_z = floor_z;
  room.floor_polygon = {{0, 0}, {size, 0}, {size, size}, {0, size}};
  return room;
}

}  // namespace bddl::testing

#endif  // BDDL_TESTS_HELPERS_HPP
