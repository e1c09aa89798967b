// Copyright 2026 The animaface Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "animaface/profile.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace animaface {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// YAML -> JSON

std::optional<json> plain_scalar(const std::string& s) {
  if (s.empty() || s == "~" || s == "null" || s == "Null" || s == "NULL") return json(nullptr);
  if (s == "true" || s == "True" || s == "TRUE") return json(true);
  if (s == "false" || s == "False" || s == "FALSE") return json(false);

  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (*first == '+') ++first;
  long long i = 0;
  if (auto [p, ec] = std::from_chars(first, last, i); ec == std::errc() && p == last) return json(i);
  double d = 0.0;
  if (auto [p, ec] = std::from_chars(first, last, d); ec == std::errc() && p == last) return json(d);
  return std::nullopt;
}

json yaml_to_json(const YAML::Node& node) {
  switch (node.Type()) {
    case YAML::NodeType::Null:
    case YAML::NodeType::Undefined:
      return nullptr;
    case YAML::NodeType::Scalar: {
      const std::string& s = node.Scalar();
      // "!" marks quoted scalars, which stay strings.
      if (node.Tag() != "!") {
        if (auto v = plain_scalar(s)) return *v;
      }
      return s;
    }
    case YAML::NodeType::Sequence: {
      json arr = json::array();
      for (const auto& child : node) arr.push_back(yaml_to_json(child));
      return arr;
    }
    case YAML::NodeType::Map: {
      json obj = json::object();
      for (const auto& kv : node) obj[kv.first.as<std::string>()] = yaml_to_json(kv.second);
      return obj;
    }
  }
  return nullptr;
}

json parse_document(std::string_view text) {
  const auto start = text.find_first_not_of(" \t\r\n");
  if (start != std::string_view::npos && text[start] == '{') {
    try {
      return json::parse(text);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("profile JSON: ") + e.what());
    }
  }
  try {
    return yaml_to_json(YAML::Load(std::string(text)));
  } catch (const YAML::Exception& e) {
    throw ParseError(std::string("profile YAML: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Schema helpers. Every accessor takes the JSON-pointer path of the value.

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw ParseError((path.empty() ? "/" : path) + ": " + what);
}

void check_keys(const json& obj, const std::string& path, std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      schema_error(path + "/" + key, "unknown key");
    }
  }
}

const json& require(const json& obj, const std::string& path, const char* key) {
  if (!obj.contains(key)) schema_error(path + "/" + key, "missing required key");
  return obj.at(key);
}

const json& as_object(const json& v, const std::string& path) {
  if (!v.is_object()) schema_error(path, "expected a mapping");
  return v;
}

const json& as_array(const json& v, const std::string& path) {
  if (!v.is_array()) schema_error(path, "expected a list");
  return v;
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) schema_error(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) schema_error(path, "expected a finite number");
  return d;
}

long long as_integer(const json& v, const std::string& path) {
  if (v.is_number_integer()) return v.get<long long>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::isfinite(d) && d == std::floor(d)) return static_cast<long long>(d);
  }
  schema_error(path, "expected an integer");
}

std::size_t as_index(const json& v, const std::string& path) {
  const long long i = as_integer(v, path);
  if (i < 0) schema_error(path, "expected a non-negative integer");
  return static_cast<std::size_t>(i);
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) schema_error(path, "expected a string");
  return v.get<std::string>();
}

std::vector<double> as_numbers(const json& v, const std::string& path) {
  std::vector<double> out;
  const json& arr = as_array(v, path);
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(as_number(arr[i], path + "/" + std::to_string(i)));
  return out;
}

NeckAxis parse_axis(const json& v, const std::string& path) {
  as_object(v, path);
  check_keys(v, path, {"motor", "gain", "rest"});
  NeckAxis axis;
  axis.motor = as_index(require(v, path, "motor"), path + "/motor");
  axis.gain = as_number(require(v, path, "gain"), path + "/gain");
  axis.rest = as_number(require(v, path, "rest"), path + "/rest");
  return axis;
}

json axis_to_json(const NeckAxis& a) { return {{"motor", a.motor}, {"gain", a.gain}, {"rest", a.rest}}; }

void validate_pose(std::span<const double> pose, std::size_t dof, const std::string& path) {
  if (pose.size() != dof) {
    throw ValidationError(path + ": expected " + std::to_string(dof) + " values, got " +
                          std::to_string(pose.size()));
  }
  for (std::size_t i = 0; i < pose.size(); ++i) {
    if (!(pose[i] >= 0.0 && pose[i] <= 1.0)) {
      throw ValidationError(path + "/" + std::to_string(i) + ": value " + std::to_string(pose[i]) +
                            " outside [0,1]");
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------

ProfileSpec parse_profile_spec(std::string_view text) {
  const json doc = parse_document(text);
  as_object(doc, "");
  check_keys(doc, "", {"robot", "neck", "merges", "excluded", "mappings"});

  ProfileSpec spec;
  const json& robot = as_object(require(doc, "", "robot"), "/robot");
  check_keys(robot, "/robot", {"dof", "rest_pose", "fps"});
  spec.dof = as_index(require(robot, "/robot", "dof"), "/robot/dof");
  spec.rest_pose = as_numbers(require(robot, "/robot", "rest_pose"), "/robot/rest_pose");
  if (robot.contains("fps")) spec.fps = static_cast<int>(as_integer(robot["fps"], "/robot/fps"));

  if (doc.contains("neck") && !doc["neck"].is_null()) {
    const json& neck = as_object(doc["neck"], "/neck");
    check_keys(neck, "/neck", {"yaw", "pitch", "roll"});
    spec.neck = NeckMapping{parse_axis(require(neck, "/neck", "yaw"), "/neck/yaw"),
                            parse_axis(require(neck, "/neck", "pitch"), "/neck/pitch"),
                            parse_axis(require(neck, "/neck", "roll"), "/neck/roll")};
  }

  if (doc.contains("merges") && !doc["merges"].is_null()) {
    const json& merges = as_array(doc["merges"], "/merges");
    for (std::size_t i = 0; i < merges.size(); ++i) {
      const std::string path = "/merges/" + std::to_string(i);
      const json& rule = as_object(merges[i], path);
      check_keys(rule, path, {"output", "inputs"});
      MergeRule m;
      m.output = as_string(require(rule, path, "output"), path + "/output");
      const json& inputs = as_array(require(rule, path, "inputs"), path + "/inputs");
      for (std::size_t k = 0; k < inputs.size(); ++k) {
        m.inputs.push_back(as_string(inputs[k], path + "/inputs/" + std::to_string(k)));
      }
      spec.merges.push_back(std::move(m));
    }
  }

  if (doc.contains("excluded") && !doc["excluded"].is_null()) {
    const json& excluded = as_array(doc["excluded"], "/excluded");
    for (std::size_t i = 0; i < excluded.size(); ++i) {
      spec.excluded.push_back(as_string(excluded[i], "/excluded/" + std::to_string(i)));
    }
  }

  if (doc.contains("mappings") && !doc["mappings"].is_null()) {
    const json& mappings = as_object(doc["mappings"], "/mappings");
    for (const auto& [name, body] : mappings.items()) {
      const std::string path = "/mappings/" + name;
      as_object(body, path);
      check_keys(body, path, {"anchors", "mask"});
      MappingSpec mapping;
      const json& anchors = as_array(require(body, path, "anchors"), path + "/anchors");
      for (std::size_t k = 0; k < anchors.size(); ++k) {
        const std::string apath = path + "/anchors/" + std::to_string(k);
        const json& a = as_object(anchors[k], apath);
        check_keys(a, apath, {"intensity", "pose"});
        mapping.anchors.push_back({as_number(require(a, apath, "intensity"), apath + "/intensity"),
                                   as_numbers(require(a, apath, "pose"), apath + "/pose")});
      }
      if (body.contains("mask") && !body["mask"].is_null()) {
        const json& mask = as_array(body["mask"], path + "/mask");
        std::vector<std::size_t> indices;
        for (std::size_t k = 0; k < mask.size(); ++k) {
          indices.push_back(as_index(mask[k], path + "/mask/" + std::to_string(k)));
        }
        mapping.mask = std::move(indices);
      }
      spec.mappings.emplace(name, std::move(mapping));
    }
  }
  return spec;
}

RetargetProfile compile_profile(const ProfileSpec& spec, bool require_anchors) {
  if (spec.dof == 0) throw ValidationError("/robot/dof: must be positive");
  if (spec.fps <= 0) throw ValidationError("/robot/fps: must be positive");
  validate_pose(spec.rest_pose, spec.dof, "/robot/rest_pose");

  RetargetProfile profile;
  profile.dof_ = spec.dof;
  profile.rest_pose_ = ActuatorVector(spec.rest_pose);
  profile.fps_ = spec.fps;
  profile.merges_ = spec.merges;
  profile.excluded_ = spec.excluded;

  if (spec.neck) {
    const NeckMapping& n = *spec.neck;
    const std::array<std::pair<const char*, const NeckAxis*>, 3> axes = {
        {{"yaw", &n.yaw}, {"pitch", &n.pitch}, {"roll", &n.roll}}};
    std::set<std::size_t> motors;
    for (const auto& [name, axis] : axes) {
      const std::string path = std::string("/neck/") + name;
      if (axis->motor >= spec.dof) throw ValidationError(path + "/motor: index >= dof");
      if (!motors.insert(axis->motor).second) throw ValidationError(path + "/motor: duplicate neck motor");
      if (!(axis->rest >= 0.0 && axis->rest <= 1.0)) throw ValidationError(path + "/rest: outside [0,1]");
      if (!std::isfinite(axis->gain)) throw ValidationError(path + "/gain: non-finite");
    }
    profile.neck_ = spec.neck;
  }

  // Every channel must be claimed exactly once: as a direct mapping, a merge
  // input, or an exclusion.
  std::array<std::vector<std::string>, kChannelCount> claims;
  const auto claim = [&](std::string_view channel, const std::string& path) -> std::size_t {
    auto idx = find_channel(channel);
    if (!idx) throw ValidationError(path + ": unknown channel '" + std::string(channel) + "'");
    claims[*idx].push_back(path);
    return *idx;
  };

  std::map<std::string, std::vector<std::size_t>> semantic_inputs;
  for (std::size_t i = 0; i < spec.merges.size(); ++i) {
    const MergeRule& rule = spec.merges[i];
    const std::string path = "/merges/" + std::to_string(i);
    if (rule.output.empty()) throw ValidationError(path + "/output: empty name");
    if (find_channel(rule.output)) {
      throw ValidationError(path + "/output: '" + rule.output + "' collides with a channel name");
    }
    if (semantic_inputs.count(rule.output)) {
      throw ValidationError(path + "/output: duplicate merge output '" + rule.output + "'");
    }
    if (rule.inputs.empty()) throw ValidationError(path + "/inputs: empty");
    std::vector<std::size_t> inputs;
    for (std::size_t k = 0; k < rule.inputs.size(); ++k) {
      inputs.push_back(claim(rule.inputs[k], path + "/inputs/" + std::to_string(k)));
    }
    if (!spec.mappings.count(rule.output)) {
      throw ValidationError(path + ": merge output '" + rule.output + "' has no mapping");
    }
    semantic_inputs.emplace(rule.output, std::move(inputs));
  }
  for (std::size_t i = 0; i < spec.excluded.size(); ++i) {
    claim(spec.excluded[i], "/excluded/" + std::to_string(i));
  }
  for (const auto& [name, mapping] : spec.mappings) {
    if (semantic_inputs.count(name)) continue;
    if (!find_channel(name)) {
      throw ValidationError("/mappings/" + name + ": unknown channel or merge output '" + name + "'");
    }
    semantic_inputs.emplace(name, std::vector<std::size_t>{claim(name, "/mappings/" + name)});
  }
  for (std::size_t c = 0; c < kChannelCount; ++c) {
    if (claims[c].empty()) {
      throw ValidationError("channel '" + std::string(kArkitChannels[c]) +
                            "' unaccounted for: map it, merge it, or exclude it");
    }
    if (claims[c].size() > 1) {
      throw ValidationError(claims[c][1] + ": channel '" + std::string(kArkitChannels[c]) +
                            "' already accounted for at " + claims[c][0]);
    }
  }

  for (const auto& [name, mapping] : spec.mappings) {
    const std::string path = "/mappings/" + name;
    if (require_anchors && mapping.anchors.empty()) {
      throw ValidationError(path + "/anchors: semantic '" + name + "' has no anchors");
    }

    double previous = 0.0;
    for (std::size_t k = 0; k < mapping.anchors.size(); ++k) {
      const std::string apath = path + "/anchors/" + std::to_string(k);
      const AnchorPose& a = mapping.anchors[k];
      if (!(a.intensity > 0.0 && a.intensity <= 1.0)) {
        throw ValidationError(apath + "/intensity: semantic '" + name + "' intensity " +
                              std::to_string(a.intensity) + " outside (0,1]");
      }
      if (!(a.intensity > previous)) {
        throw ValidationError(apath + "/intensity: semantic '" + name +
                              "' anchor intensities must strictly increase (" +
                              std::to_string(a.intensity) + " after " + std::to_string(previous) + ")");
      }
      previous = a.intensity;
      validate_pose(a.pose, spec.dof, apath + "/pose");
    }

    std::vector<std::size_t> mask;
    if (mapping.mask) {
      mask = *mapping.mask;
      std::set<std::size_t> seen;
      for (std::size_t k = 0; k < mask.size(); ++k) {
        const std::string mpath = path + "/mask/" + std::to_string(k);
        if (mask[k] >= spec.dof) throw ValidationError(mpath + ": index >= dof");
        if (!seen.insert(mask[k]).second) throw ValidationError(mpath + ": duplicate index");
      }
    } else {
      for (std::size_t c = 0; c < spec.dof; ++c) {
        const bool moves = std::any_of(mapping.anchors.begin(), mapping.anchors.end(), [&](const AnchorPose& a) {
          return std::abs(a.pose[c] - spec.rest_pose[c]) > kDefaultMaskThreshold;
        });
        if (moves) mask.push_back(c);
      }
    }

    std::vector<bool> in_mask(spec.dof, false);
    for (std::size_t m : mask) in_mask[m] = true;
    std::vector<Anchor> anchors;
    for (const AnchorPose& a : mapping.anchors) {
      Anchor anchor{a.intensity, std::vector<double>(spec.dof, 0.0)};
      for (std::size_t c = 0; c < spec.dof; ++c) {
        if (in_mask[c]) anchor.delta[c] = a.pose[c] - spec.rest_pose[c];
      }
      anchors.push_back(std::move(anchor));
    }
    profile.maps_.emplace_back(name, spec.dof, std::move(anchors), std::move(mask));
    profile.inputs_.push_back(semantic_inputs.at(name));
  }
  return profile;
}

const PiecewiseMap* RetargetProfile::find_map(std::string_view semantic) const {
  auto it = std::lower_bound(maps_.begin(), maps_.end(), semantic,
                             [](const PiecewiseMap& m, std::string_view s) { return m.semantic() < s; });
  if (it != maps_.end() && it->semantic() == semantic) return &*it;
  return nullptr;
}

RetargetProfile load_profile(std::string_view text) { return compile_profile(parse_profile_spec(text)); }

RetargetProfile load_profile_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open profile '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return load_profile(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

ProfileSpec to_spec(const RetargetProfile& profile) {
  ProfileSpec spec;
  spec.dof = profile.dof();
  spec.rest_pose = profile.rest_pose().values();
  spec.fps = profile.fps();
  spec.neck = profile.neck();
  spec.merges = profile.merges();
  spec.excluded = profile.excluded();
  for (const PiecewiseMap& map : profile.maps()) {
    MappingSpec mapping;
    mapping.mask = map.mask();
    for (const Anchor& a : map.anchors()) {
      std::vector<double> pose = spec.rest_pose;
      for (std::size_t c = 0; c < spec.dof; ++c) pose[c] = std::clamp(pose[c] + a.delta[c], 0.0, 1.0);
      mapping.anchors.push_back({a.intensity, std::move(pose)});
    }
    spec.mappings.emplace(map.semantic(), std::move(mapping));
  }
  return spec;
}

std::string dump_profile(const ProfileSpec& spec) {
  json doc;
  doc["robot"] = {{"dof", spec.dof}, {"rest_pose", spec.rest_pose}, {"fps", spec.fps}};
  if (spec.neck) {
    doc["neck"] = {{"yaw", axis_to_json(spec.neck->yaw)},
                   {"pitch", axis_to_json(spec.neck->pitch)},
                   {"roll", axis_to_json(spec.neck->roll)}};
  }
  doc["merges"] = json::array();
  for (const MergeRule& m : spec.merges) doc["merges"].push_back({{"output", m.output}, {"inputs", m.inputs}});
  doc["excluded"] = spec.excluded;
  doc["mappings"] = json::object();
  for (const auto& [name, mapping] : spec.mappings) {
    json body;
    body["anchors"] = json::array();
    for (const AnchorPose& a : mapping.anchors) body["anchors"].push_back({{"intensity", a.intensity}, {"pose", a.pose}});
    if (mapping.mask) body["mask"] = *mapping.mask;
    doc["mappings"][name] = std::move(body);
  }
  return doc.dump(2) + "\n";
}

std::string serialize_profile(const RetargetProfile& profile) { return dump_profile(to_spec(profile)); }

}  // namespace animaface
