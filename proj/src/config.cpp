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

#include "bddl/config.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "bddl/errors.hpp"

namespace bddl {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                        (s.front() == '\'' && s.back() == '\''))) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

double parse_double(const std::string& value, const std::string& key) {
  try {
    std::size_t consumed = 0;
    const double parsed = std::stod(value, &consumed);
    if (consumed != value.size()) throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception&) {
    throw FormatError("config." + key, "expected a number, got '" + value + "'");
  }
}

bool parse_bool(const std::string& value, const std::string& key) {
  if (value == "true") return true;
  if (value == "false") return false;
  throw FormatError("config." + key, "expected true or false, got '" + value + "'");
}

std::string resolve_path(const std::string& base_dir, const std::string& path) {
  if (path.empty()) return path;
  std::filesystem::path p(path);
  if (p.is_absolute() || base_dir.empty()) return path;
  return (std::filesystem::path(base_dir) / p).string();
}

}  // namespace

EngineConfig parse_engine_config(std::string_view source,
                                 const std::string& base_dir) {
  EngineConfig config;
  std::istringstream stream{std::string(source)};
  std::string line;
  std::string section;
  int line_number = 0;
  while (std::getline(stream, line)) {
    ++line_number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      section = trim(line.substr(1, line.size() - 2));
      if (section != "predicate_params" && section != "sampler_params") {
        throw FormatError("config line " + std::to_string(line_number),
                          "unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw FormatError("config line " + std::to_string(line_number),
                        "expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = unquote(trim(line.substr(eq + 1)));
    const std::string qualified = section.empty() ? key : section + "." + key;

    if (section == "predicate_params") {
      if (key == "touch_epsilon") config.predicate_params.touch_epsilon = parse_double(value, qualified);
      else if (key == "support_gap") config.predicate_params.support_gap = parse_double(value, qualified);
      else if (key == "footprint_ratio") config.predicate_params.footprint_ratio = parse_double(value, qualified);
      else if (key == "inside_ratio") config.predicate_params.inside_ratio = parse_double(value, qualified);
      else if (key == "nextto_scale") config.predicate_params.nextto_scale = parse_double(value, qualified);
      else throw FormatError("config line " + std::to_string(line_number), "unknown key " + qualified);
    } else if (section == "sampler_params") {
      if (key == "max_attempts_per_atom") {
        config.sampler_params.max_attempts_per_atom =
            static_cast<int>(parse_double(value, qualified));
      } else if (key == "clearance") {
        config.sampler_params.clearance = parse_double(value, qualified);
      } else if (key == "seed") {
        config.sampler_params.seed =
            static_cast<std::uint64_t>(parse_double(value, qualified));
      } else {
        throw FormatError("config line " + std::to_string(line_number),
                          "unknown key " + qualified);
      }
    } else {
      if (key == "taxonomy_path") config.taxonomy_path = resolve_path(base_dir, value);
      else if (key == "object_library_path") config.object_library_path = resolve_path(base_dir, value);
      else if (key == "strict") config.strict = parse_bool(value, qualified);
      else throw FormatError("config line " + std::to_string(line_number), "unknown key " + qualified);
    }
  }
  config.predicate_params.validate();
  config.sampler_params.validate();
  return config;
}

EngineConfig load_engine_config(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw FormatError("config", "cannot open " + path);
  std::stringstream buffer;
  buffer << file.rdbuf();
  const std::string base_dir = std::filesystem::path(path).parent_path().string();
  EngineConfig config = parse_engine_config(buffer.str(), base_dir);
  for (const std::string& referenced :
       {config.taxonomy_path, config.object_library_path}) {
    if (!referenced.empty() && !std::filesystem::exists(referenced)) {
      throw FormatError("config", "referenced path does not exist: " + referenced);
    }
  }
  return config;
}

Manifest load_manifest(std::string_view source) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(source);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError("manifest", e.what());
  }
  if (!root.is_array()) throw FormatError("manifest", "expected a JSON array");
  Manifest manifest;
  for (const auto& jr : root) {
    ManifestRow row;
    try {
      row.asset_name = jr.at("asset_name").get<std::string>();
      row.apartment_count = jr.at("apartment_count").get<long>();
      row.room_count = jr.at("room_count").get<long>();
      row.category_count = jr.at("category_count").get<long>();
      row.object_count = jr.at("object_count").get<long>();
      row.articulated_object_count = jr.at("articulated_object_count").get<long>();
    } catch (const nlohmann::json::exception& e) {
      throw FormatError("manifest", e.what());
    }
    if (row.apartment_count < 0 || row.room_count < 0 || row.category_count < 0 ||
        row.object_count < 0 || row.articulated_object_count < 0) {
      throw FormatError("manifest", "counts must be >= 0");
    }
    manifest.push_back(std::move(row));
  }
  return manifest;
}

std::string render_manifest_table(const Manifest& manifest, bool markdown) {
  const std::vector<std::string> headers = {"Asset", "Apt.", "Rm.",
                                            "Cat.",  "Obj.", "A.O."};
  std::vector<long> maxima(5, 0);
  for (const auto& row : manifest) {
    const long values[5] = {row.apartment_count, row.room_count,
                            row.category_count, row.object_count,
                            row.articulated_object_count};
    for (int i = 0; i < 5; ++i) maxima[i] = std::max(maxima[i], values[i]);
  }

  std::vector<std::vector<std::string>> cells;
  cells.push_back(headers);
  for (const auto& row : manifest) {
    const long values[5] = {row.apartment_count, row.room_count,
                            row.category_count, row.object_count,
                            row.articulated_object_count};
    std::vector<std::string> line = {row.asset_name};
    for (int i = 0; i < 5; ++i) {
      std::string cell = std::to_string(values[i]);
      if (markdown && !manifest.empty() && values[i] == maxima[i]) {
        cell = "**" + cell + "**";
      }
      line.push_back(std::move(cell));
    }
    cells.push_back(std::move(line));
  }

  std::vector<std::size_t> widths(6, 0);
  for (const auto& line : cells) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      widths[i] = std::max(widths[i], line[i].size());
    }
  }

  std::ostringstream out;
  for (std::size_t r = 0; r < cells.size(); ++r) {
    const auto& line = cells[r];
    if (markdown) {
      out << '|';
      for (std::size_t i = 0; i < line.size(); ++i) {
        out << ' ' << line[i] << std::string(widths[i] - line[i].size(), ' ')
            << " |";
      }
      out << '\n';
      if (r == 0) {
        out << '|';
        for (std::size_t i = 0; i < line.size(); ++i) {
          out << ' ' << std::string(widths[i], '-') << " |";
        }
        out << '\n';
      }
    } else {
      for (std::size_t i = 0; i < line.size(); ++i) {
        if (i > 0) out << "  ";
        if (i == 0) {
          out << line[i] << std::string(widths[i] - line[i].size(), ' ');
        } else {
          out << std::string(widths[i] - line[i].size(), ' ') << line[i];
        }
      }
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace bddl
