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

#include "bddl/taxonomy.hpp"

#include <algorithm>
#include <sstream>

#include "bddl/errors.hpp"
#include "bddl/rng.hpp"

namespace bddl {

Taxonomy::Taxonomy(
    const std::vector<std::pair<std::string, std::string>>& hierarchy,
    const std::vector<std::pair<std::string, std::string>>& categories) {
  for (const auto& [child, parent] : hierarchy) {
    nodes_.insert(child);
    nodes_.insert(parent);
    const auto [it, inserted] = parent_.emplace(child, parent);
    if (!inserted && it->second != parent) {
      throw FormatError("hierarchy",
                        "synset " + child + " declared with two parents (" +
                            it->second + ", " + parent + ")");
    }
  }
  // Walk every node to its root; a walk longer than the node count is a loop.
  for (const auto& node : nodes_) {
    std::vector<std::string> path{node};
    std::string current = node;
    while (true) {
      const auto it = parent_.find(current);
      if (it == parent_.end()) break;
      current = it->second;
      path.push_back(current);
      if (path.size() > nodes_.size()) {
        throw CycleDetectedError(path);
      }
    }
  }
  for (const auto& [category, synset] : categories) {
    if (nodes_.count(synset) == 0) {
      throw DanglingReferenceError(synset);
    }
    category_to_synset_[category] = synset;
  }
}

std::optional<std::string> Taxonomy::parent_of(const std::string& synset) const {
  const auto it = parent_.find(synset);
  if (it == parent_.end()) return std::nullopt;
  return it->second;
}

bool Taxonomy::is_a(const std::string& synset, const std::string& ancestor) const {
  if (nodes_.count(synset) == 0) throw UnknownSynsetError(synset);
  if (nodes_.count(ancestor) == 0) throw UnknownSynsetError(ancestor);
  std::string current = synset;
  while (true) {
    if (current == ancestor) return true;
    const auto it = parent_.find(current);
    if (it == parent_.end()) return false;
    current = it->second;
  }
}

std::optional<std::string> Taxonomy::synset_of_category(
    const std::string& category) const {
  const auto it = category_to_synset_.find(category);
  if (it != category_to_synset_.end()) return it->second;
  if (nodes_.count(category) > 0) return category;
  return std::nullopt;
}

std::string Taxonomy::category_for_synset(const std::string& synset) const {
  for (const auto& [category, mapped] : category_to_synset_) {
    if (mapped == synset) return category;
  }
  return synset;
}

Taxonomy load_taxonomy(std::string_view source) {
  std::vector<std::pair<std::string, std::string>> hierarchy;
  std::vector<std::pair<std::string, std::string>> categories;

  std::istringstream stream{std::string(source)};
  std::string line;
  int line_number = 0;
  enum class Section { None, Hierarchy, Categories } section = Section::None;
  while (std::getline(stream, line)) {
    ++line_number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first)) continue;
    if (first == "hierarchy") {
      section = Section::Hierarchy;
      continue;
    }
    if (first == "categories") {
      section = Section::Categories;
      continue;
    }
    std::string second;
    if (!(fields >> second)) {
      throw FormatError("taxonomy line " + std::to_string(line_number),
                        "expected two names per line");
    }
    std::string extra;
    if (fields >> extra) {
      throw FormatError("taxonomy line " + std::to_string(line_number),
                        "expected two names per line");
    }
    switch (section) {
      case Section::Hierarchy:
        hierarchy.emplace_back(first, second);
        break;
      case Section::Categories:
        categories.emplace_back(first, second);
        break;
      case Section::None:
        throw FormatError("taxonomy line " + std::to_string(line_number),
                          "entry before a section header");
    }
  }
  return Taxonomy(hierarchy, categories);
}

const std::string& GroundScope::instance_of(const std::string& term) const {
  const auto it = bindings.find(term);
  if (it == bindings.end()) throw UnboundTermError(term);
  return it->second;
}

void validate_scope(const GroundScope& scope, const SceneState& scene) {
  std::set<std::string> used;
  for (const auto& [term, instance] : scope.bindings) {
    if (!scene.has_object(instance) && !scene.has_room(instance)) {
      throw UnknownObjectError(instance);
    }
    if (!used.insert(instance).second) {
      throw InvariantViolationError(
          term, "instance " + instance + " bound to two terms");
    }
  }
}

std::vector<std::string> candidate_instances(const Taxonomy& taxonomy,
                                             const std::string& synset,
                                             const SceneState& scene) {
  if (!taxonomy.contains(synset)) throw UnknownSynsetError(synset);
  std::vector<std::string> ids;
  for (const auto& [id, object] : scene.objects) {
    const auto object_synset = taxonomy.synset_of_category(object.category);
    if (object_synset && taxonomy.is_a(*object_synset, synset)) {
      ids.push_back(id);
    }
  }
  const auto floor_synset = taxonomy.synset_of_category(kFloorCategory);
  if (floor_synset && taxonomy.is_a(*floor_synset, synset)) {
    for (const auto& [id, room] : scene.rooms) {
      ids.push_back(id);
    }
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

namespace {

// Depth-first injective assignment over seeded-shuffled candidate lists.
bool assign(std::size_t index,
            const std::vector<std::pair<std::string, std::vector<std::string>>>& terms,
            std::set<std::string>& used, GroundScope& scope,
            std::string& blocked_term) {
  if (index == terms.size()) return true;
  const auto& [term, candidates] = terms[index];
  bool any_free = false;
  for (const auto& candidate : candidates) {
    if (used.count(candidate) > 0) continue;
    any_free = true;
    used.insert(candidate);
    scope.bindings[term] = candidate;
    if (assign(index + 1, terms, used, scope, blocked_term)) return true;
    scope.bindings.erase(term);
    used.erase(candidate);
  }
  if (!any_free && blocked_term.empty()) blocked_term = term;
  return false;
}

}  // namespace

GroundScope ground_terms_restricted(
    const Activity& activity, const Taxonomy& taxonomy, const SceneState& scene,
    std::uint64_t seed,
    const std::map<std::string, std::set<std::string>>& restrict_to) {
  Rng rng(seed);
  std::vector<std::pair<std::string, std::vector<std::string>>> terms;
  terms.reserve(activity.objects.size());
  for (const auto& decl : activity.objects) {
    std::vector<std::string> candidates =
        candidate_instances(taxonomy, decl.synset, scene);
    const auto filter = restrict_to.find(decl.term);
    if (filter != restrict_to.end()) {
      std::erase_if(candidates, [&](const std::string& id) {
        return filter->second.count(id) == 0;
      });
    }
    rng.shuffle(candidates);
    terms.emplace_back(decl.term, std::move(candidates));
  }

  GroundScope scope;
  std::set<std::string> used;
  std::string blocked_term;
  if (!assign(0, terms, used, scope, blocked_term)) {
    if (blocked_term.empty() && !terms.empty()) blocked_term = terms.front().first;
    throw UnsatisfiableError(blocked_term);
  }
  validate_scope(scope, scene);
  return scope;
}

GroundScope ground_terms(const Activity& activity, const Taxonomy& taxonomy,
                         const SceneState& scene, std::uint64_t seed) {
  return ground_terms_restricted(activity, taxonomy, scene, seed, {});
}

}  // namespace bddl
