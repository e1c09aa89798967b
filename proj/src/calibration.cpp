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

#include "animaface/calibration.hpp"

#include <algorithm>
#include <cmath>

#include "animaface/retarget.hpp"

namespace animaface {

namespace {

std::vector<std::string> selectable_semantics(const ProfileSpec& spec) {
  std::vector<std::string> out;
  for (const MergeRule& m : spec.merges) out.push_back(m.output);
  for (auto name : kArkitChannels) {
    const bool merged = std::any_of(spec.merges.begin(), spec.merges.end(), [&](const MergeRule& m) {
      return std::find(m.inputs.begin(), m.inputs.end(), name) != m.inputs.end();
    });
    if (!merged) out.emplace_back(name);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

nlohmann::json CalibrationSnapshot::to_json() const {
  nlohmann::json anchors_json = nlohmann::json::object();
  for (const auto& [name, list] : anchors) {
    nlohmann::json arr = nlohmann::json::array();
    for (const AnchorPose& a : list) arr.push_back({{"intensity", a.intensity}, {"pose", a.pose}});
    anchors_json[name] = std::move(arr);
  }
  return {{"version", version},   {"actuators", actuators}, {"semantic", semantic},
          {"intensity", intensity}, {"anchors", anchors_json}, {"semantics", semantics}};
}

CalibrationSession::CalibrationSession(ProfileSpec draft) : draft_(std::move(draft)) {
  compile_profile(draft_, /*require_anchors=*/false);
  dof_ = draft_.dof;
  live_ = draft_.rest_pose;
}

ProfileSpec CalibrationSession::blank_draft(std::size_t dof, double rest) {
  ProfileSpec spec;
  spec.dof = dof;
  spec.rest_pose.assign(dof, rest);
  for (auto name : kArkitChannels) spec.excluded.emplace_back(name);
  return spec;
}

CalibrationSnapshot CalibrationSession::snapshot() const {
  std::lock_guard lock(mutex_);
  return snapshot_locked();
}

CalibrationSnapshot CalibrationSession::snapshot_locked() const {
  CalibrationSnapshot s;
  s.version = version_;
  s.actuators = live_;
  s.semantic = semantic_;
  s.intensity = intensity_;
  for (const auto& [name, mapping] : draft_.mappings) s.anchors[name] = mapping.anchors;
  s.semantics = selectable_semantics(draft_);
  return s;
}

CalibrationSnapshot CalibrationSession::publish_locked() {
  ++version_;
  CalibrationSnapshot s = snapshot_locked();
  for (const auto& [id, listener] : listeners_) listener(s);
  return s;
}

CalibrationSnapshot CalibrationSession::set_actuator(std::size_t index, double value) {
  std::lock_guard lock(mutex_);
  if (index >= dof_) {
    throw ValidationError("actuator index " + std::to_string(index) + " >= dof " + std::to_string(dof_));
  }
  if (!std::isfinite(value)) throw ValidationError("actuator value must be finite");
  live_[index] = std::clamp(value, 0.0, 1.0);
  return publish_locked();
}

CalibrationSnapshot CalibrationSession::select(const std::string& semantic, double intensity) {
  std::lock_guard lock(mutex_);
  if (!(intensity >= 0.0 && intensity <= 1.0)) {
    throw ValidationError("intensity " + std::to_string(intensity) + " outside [0,1]");
  }
  const bool is_merge_output = std::any_of(draft_.merges.begin(), draft_.merges.end(),
                                           [&](const MergeRule& m) { return m.output == semantic; });
  if (!is_merge_output) {
    if (!find_channel(semantic)) throw ValidationError("unknown semantic '" + semantic + "'");
    for (const MergeRule& m : draft_.merges) {
      if (std::find(m.inputs.begin(), m.inputs.end(), semantic) != m.inputs.end()) {
        throw ValidationError("channel '" + semantic + "' is merged into '" + m.output + "'; select that instead");
      }
    }
    auto ex = std::find(draft_.excluded.begin(), draft_.excluded.end(), semantic);
    if (ex != draft_.excluded.end()) {
      draft_.excluded.erase(ex);
      draft_.mappings.emplace(semantic, MappingSpec{});
    }
  }
  semantic_ = semantic;
  intensity_ = intensity;
  return publish_locked();
}

CalibrationSnapshot CalibrationSession::save_anchor() {
  std::lock_guard lock(mutex_);
  if (semantic_.empty()) throw ValidationError("no semantic selected");
  if (!(intensity_ > 0.0)) throw ValidationError("anchors need an intensity above 0 (0 is the rest pose)");

  auto& anchors = draft_.mappings[semantic_].anchors;
  auto it = std::lower_bound(anchors.begin(), anchors.end(), intensity_,
                             [](const AnchorPose& a, double t) { return a.intensity < t; });
  if (it != anchors.end() && it->intensity == intensity_) {
    it->pose = live_;
  } else {
    anchors.insert(it, AnchorPose{intensity_, live_});
  }
  return publish_locked();
}

CalibrationSnapshot CalibrationSession::delete_anchor(double intensity) {
  std::lock_guard lock(mutex_);
  if (semantic_.empty()) throw ValidationError("no semantic selected");
  auto& anchors = draft_.mappings[semantic_].anchors;
  std::erase_if(anchors, [&](const AnchorPose& a) { return a.intensity == intensity; });
  return publish_locked();
}

ActuatorVector CalibrationSession::preview(const std::map<std::string, double>& intensities) const {
  Coefficients coeffs{};
  for (const auto& [name, beta] : intensities) coeffs[channel_index(name)] = beta;
  const BlendshapeFrame frame = BlendshapeFrame::make(coeffs, 0.0);

  std::lock_guard lock(mutex_);
  return retarget_frame(compile_profile(draft_, /*require_anchors=*/false), frame);
}

std::string CalibrationSession::export_profile() const {
  std::lock_guard lock(mutex_);
  compile_profile(draft_, /*require_anchors=*/true);
  return dump_profile(draft_);
}

std::size_t CalibrationSession::subscribe(Listener listener) {
  std::lock_guard lock(mutex_);
  const std::size_t id = next_listener_++;
  listeners_.emplace(id, std::move(listener));
  return id;
}

void CalibrationSession::unsubscribe(std::size_t id) {
  std::lock_guard lock(mutex_);
  listeners_.erase(id);
}

}  // namespace animaface
