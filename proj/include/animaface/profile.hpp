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

#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "animaface/core_types.hpp"
#include "animaface/piecewise_map.hpp"

namespace animaface {

/// Averages several input channels into one semantic (left/right pairs that
/// share an actuator).
struct MergeRule {
  std::string output;
  std::vector<std::string> inputs;

  friend bool operator==(const MergeRule&, const MergeRule&) = default;
};

struct NeckAxis {
  std::size_t motor = 0;
  double gain = 0.0;  // per radian
  double rest = 0.5;

  friend bool operator==(const NeckAxis&, const NeckAxis&) = default;
};

struct NeckMapping {
  NeckAxis yaw;
  NeckAxis pitch;
  NeckAxis roll;

  friend bool operator==(const NeckMapping&, const NeckMapping&) = default;
};

/// Animator-authored absolute robot pose at one intensity.
struct AnchorPose {
  double intensity = 0.0;
  std::vector<double> pose;

  friend bool operator==(const AnchorPose&, const AnchorPose&) = default;
};

struct MappingSpec {
  std::vector<AnchorPose> anchors;
  std::optional<std::vector<std::size_t>> mask;

  friend bool operator==(const MappingSpec&, const MappingSpec&) = default;
};

/// In-memory form of a profile document, before validation. Anchor poses
/// are absolute; compilation turns them into masked deltas.
struct ProfileSpec {
  std::size_t dof = 0;
  std::vector<double> rest_pose;
  int fps = 25;
  std::optional<NeckMapping> neck;
  std::vector<MergeRule> merges;
  std::vector<std::string> excluded;
  std::map<std::string, MappingSpec> mappings;

  friend bool operator==(const ProfileSpec&, const ProfileSpec&) = default;
};

/// Changes in actuator offset smaller than this do not enter the default
/// channel mask.
inline constexpr double kDefaultMaskThreshold = 1e-4;

class RetargetProfile;

/// Validates a spec and converts anchors to deltas. With `require_anchors`
/// false, mapped semantics without anchors compile to zero maps (used for
/// previews of partially authored drafts). Throws ValidationError naming the
/// document path of the offending entry.
RetargetProfile compile_profile(const ProfileSpec& spec, bool require_anchors = true);

/// Validated, immutable retargeting profile.
class RetargetProfile {
 public:
  std::size_t dof() const { return dof_; }
  const ActuatorVector& rest_pose() const { return rest_pose_; }
  int fps() const { return fps_; }
  const std::optional<NeckMapping>& neck() const { return neck_; }
  const std::vector<MergeRule>& merges() const { return merges_; }
  const std::vector<std::string>& excluded() const { return excluded_; }

  /// All semantics, sorted by name.
  const std::vector<PiecewiseMap>& maps() const { return maps_; }
  /// Channel indices feeding maps()[i]; the semantic's intensity is their mean.
  const std::vector<std::size_t>& inputs_of(std::size_t semantic) const { return inputs_[semantic]; }
  const PiecewiseMap* find_map(std::string_view semantic) const;

 private:
  friend RetargetProfile compile_profile(const ProfileSpec&, bool);

  std::size_t dof_ = 0;
  ActuatorVector rest_pose_;
  int fps_ = 25;
  std::optional<NeckMapping> neck_;
  std::vector<MergeRule> merges_;
  std::vector<std::string> excluded_;
  std::vector<PiecewiseMap> maps_;
  std::vector<std::vector<std::size_t>> inputs_;
};

/// Parses a YAML or JSON profile document. Throws ParseError with a
/// JSON-pointer style path on schema violations.
ProfileSpec parse_profile_spec(std::string_view text);

RetargetProfile load_profile(std::string_view text);
RetargetProfile load_profile_file(const std::filesystem::path& path);

/// Reconstructs a document (absolute anchor poses, explicit masks).
ProfileSpec to_spec(const RetargetProfile& profile);

/// JSON document text for a spec; parse_profile_spec accepts it back.
std::string dump_profile(const ProfileSpec& spec);
std::string serialize_profile(const RetargetProfile& profile);

}  // namespace animaface
