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

#include <array>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "animaface/core_types.hpp"
#include "animaface/profile.hpp"
#include "animaface/smoothing.hpp"

namespace animaface {

/// Semantic intensities for one frame: merge outputs carry the mean of their
/// inputs, direct mappings pass through, excluded channels are absent.
std::map<std::string, double> merge_channels(const BlendshapeFrame& frame, const RetargetProfile& profile);

/// m = clamp(rest + sum of per-semantic deltas), clamped once after the sum.
/// Neck motors are overwritten from the head pose when the frame has one and
/// the profile maps the neck.
ActuatorVector retarget_frame(const RetargetProfile& profile, const BlendshapeFrame& frame);

struct NeckCommand {
  std::size_t motor = 0;
  double value = 0.0;

  friend bool operator==(const NeckCommand&, const NeckCommand&) = default;
};

/// Affine per-axis map clamp(rest + gain * angle), in yaw, pitch, roll order.
/// Throws ValidationError when the profile has no neck mapping.
std::array<NeckCommand, 3> map_head_pose(const RetargetProfile& profile, const HeadPose& pose);

/// Smooths the whole sequence, then retargets each frame.
std::vector<ActuatorVector> retarget_sequence(const RetargetProfile& profile,
                                              std::span<const BlendshapeFrame> frames,
                                              const SmoothingConfig& cfg);

}  // namespace animaface
