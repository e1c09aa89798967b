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
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "animaface/core_types.hpp"
#include "animaface/profile.hpp"
#include "json.hpp"

namespace animaface {

/// Full session state pushed to subscribers after every change.
struct CalibrationSnapshot {
  std::uint64_t version = 0;
  std::vector<double> actuators;
  std::string semantic;
  double intensity = 0.0;
  std::map<std::string, std::vector<AnchorPose>> anchors;
  std::vector<std::string> semantics;

  nlohmann::json to_json() const;
};

/// Anchor-authoring session over one profile draft.
///
/// A human poses the robot (set_actuator) for a selected semantic and
/// intensity, then records the pose as an anchor. All members are safe to
/// call from several threads; mutations are serialized and every one is
/// followed by a snapshot broadcast to the subscribers, in order.
class CalibrationSession {
 public:
  using Listener = std::function<void(const CalibrationSnapshot&)>;

  /// Throws ValidationError if the draft does not compile (anchors may be
  /// missing). Live actuators start at the rest pose.
  explicit CalibrationSession(ProfileSpec draft);

  /// Empty draft of `dof` actuators at `rest`, every channel excluded.
  static ProfileSpec blank_draft(std::size_t dof, double rest = 0.5);

  CalibrationSnapshot snapshot() const;
  std::size_t dof() const { return dof_; }

  /// Stores clamp(value). Throws ValidationError for index >= dof or a
  /// non-finite value.
  CalibrationSnapshot set_actuator(std::size_t index, double value);

  /// Selects a semantic (a channel name or merge output) at an intensity in
  /// [0,1]. Selecting an excluded channel turns it into a mapped semantic
  /// with no anchors yet.
  CalibrationSnapshot select(const std::string& semantic, double intensity);

  /// Records the live actuators as the selected semantic's anchor at the
  /// selected intensity, replacing any anchor already there.
  CalibrationSnapshot save_anchor();

  /// Removes the selected semantic's anchor at `intensity`, if any.
  CalibrationSnapshot delete_anchor(double intensity);

  /// retarget_frame under the current draft. Keys are channel names;
  /// missing channels are 0.
  ActuatorVector preview(const std::map<std::string, double>& intensities) const;

  /// Profile document of the draft. Throws ValidationError when a mapped
  /// semantic has no anchors.
  std::string export_profile() const;

  std::size_t subscribe(Listener listener);
  void unsubscribe(std::size_t id);

 private:
  CalibrationSnapshot snapshot_locked() const;
  CalibrationSnapshot publish_locked();

  mutable std::mutex mutex_;
  ProfileSpec draft_;
  std::size_t dof_;
  std::vector<double> live_;
  std::string semantic_;
  double intensity_ = 0.0;
  std::uint64_t version_ = 0;
  std::map<std::size_t, Listener> listeners_;
  std::size_t next_listener_ = 0;
};

}  // namespace animaface
