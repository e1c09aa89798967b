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

#include "animaface/retarget.hpp"

#include <algorithm>

namespace animaface {

namespace {

double semantic_intensity(const BlendshapeFrame& frame, const std::vector<std::size_t>& inputs) {
  if (inputs.size() == 1) return frame[inputs.front()];
  double sum = 0.0;
  for (std::size_t c : inputs) sum += frame[c];
  return sum / static_cast<double>(inputs.size());
}

}  // namespace

std::map<std::string, double> merge_channels(const BlendshapeFrame& frame, const RetargetProfile& profile) {
  std::map<std::string, double> out;
  for (std::size_t j = 0; j < profile.maps().size(); ++j) {
    out.emplace(profile.maps()[j].semantic(), semantic_intensity(frame, profile.inputs_of(j)));
  }
  return out;
}

ActuatorVector retarget_frame(const RetargetProfile& profile, const BlendshapeFrame& frame) {
  profile.rest_pose().check_size(profile.dof());

  std::vector<double> m = profile.rest_pose().values();
  for (std::size_t j = 0; j < profile.maps().size(); ++j) {
    const PiecewiseMap& map = profile.maps()[j];
    if (map.dof() != profile.dof()) throw ValidationError("map '" + map.semantic() + "' dimension mismatch");
    map.accumulate(semantic_intensity(frame, profile.inputs_of(j)), m);
  }
  for (double& v : m) v = std::clamp(v, 0.0, 1.0);

  if (frame.pose() && profile.neck()) {
    for (const NeckCommand& cmd : map_head_pose(profile, *frame.pose())) m[cmd.motor] = cmd.value;
  }
  return ActuatorVector(std::move(m));
}

std::array<NeckCommand, 3> map_head_pose(const RetargetProfile& profile, const HeadPose& pose) {
  if (!profile.neck()) throw ValidationError("profile has no neck mapping");
  const NeckMapping& n = *profile.neck();
  const auto axis = [](const NeckAxis& a, double angle) {
    return NeckCommand{a.motor, std::clamp(a.rest + a.gain * angle, 0.0, 1.0)};
  };
  return {axis(n.yaw, pose.yaw), axis(n.pitch, pose.pitch), axis(n.roll, pose.roll)};
}

std::vector<ActuatorVector> retarget_sequence(const RetargetProfile& profile,
                                              std::span<const BlendshapeFrame> frames,
                                              const SmoothingConfig& cfg) {
  const std::vector<BlendshapeFrame> smoothed = smooth_sequence(frames, cfg);
  std::vector<ActuatorVector> out;
  out.reserve(smoothed.size());
  for (const BlendshapeFrame& f : smoothed) out.push_back(retarget_frame(profile, f));
  return out;
}

}  // namespace animaface
