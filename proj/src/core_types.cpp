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

#include "animaface/core_types.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace animaface {

std::optional<std::size_t> find_channel(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kChannelCount; ++i) {
    if (kArkitChannels[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t channel_index(std::string_view name) {
  if (auto idx = find_channel(name)) return *idx;
  throw ValidationError("unknown blendshape channel '" + std::string(name) + "'");
}

std::vector<double> clamp_unit(std::span<const double> values) {
  std::vector<double> out;
  out.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double x = values[i];
    if (!std::isfinite(x)) {
      throw ValidationError("non-finite value at index " + std::to_string(i));
    }
    out.push_back(std::min(1.0, std::max(0.0, x)));
  }
  return out;
}

void HeadPose::validate() const {
  const std::array<std::pair<const char*, double>, 3> axes = {
      {{"yaw", yaw}, {"pitch", pitch}, {"roll", roll}}};
  for (const auto& [name, angle] : axes) {
    if (!std::isfinite(angle) || std::abs(angle) > std::numbers::pi) {
      throw ValidationError(std::string("head pose ") + name + " out of range: " +
                            std::to_string(angle));
    }
  }
}

BlendshapeFrame BlendshapeFrame::make(const Coefficients& coefficients, double timestamp_ms,
                                      std::optional<HeadPose> pose, ValidationMode mode,
                                      ValidationReport* report) {
  BlendshapeFrame frame;
  if (!std::isfinite(timestamp_ms)) throw ValidationError("non-finite timestamp");
  for (std::size_t i = 0; i < kChannelCount; ++i) {
    double x = coefficients[i];
    if (!std::isfinite(x)) {
      throw ValidationError("non-finite coefficient for " + std::string(kArkitChannels[i]));
    }
    if (x < 0.0 || x > 1.0) {
      if (mode == ValidationMode::kStrict) {
        throw ValidationError("coefficient " + std::string(kArkitChannels[i]) + "=" +
                              std::to_string(x) + " outside [0,1]");
      }
      x = std::clamp(x, 0.0, 1.0);
      if (report) ++report->clamped;
    }
    frame.coefficients_[i] = x;
  }
  if (pose) pose->validate();
  frame.timestamp_ms_ = timestamp_ms;
  frame.pose_ = pose;
  return frame;
}

BlendshapeFrame BlendshapeFrame::with_coefficients(const Coefficients& coefficients) const {
  return make(coefficients, timestamp_ms_, pose_);
}

void check_timestamps(std::span<const BlendshapeFrame> frames) {
  for (std::size_t i = 1; i < frames.size(); ++i) {
    if (!(frames[i].timestamp_ms() > frames[i - 1].timestamp_ms())) {
      throw ValidationError("timestamps not strictly increasing at frame " + std::to_string(i));
    }
  }
}

ActuatorVector::ActuatorVector(std::vector<double> values) : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double x = values_[i];
    if (!std::isfinite(x) || x < 0.0 || x > 1.0) {
      throw ValidationError("actuator " + std::to_string(i) + "=" + std::to_string(x) +
                            " outside [0,1]");
    }
  }
}

ActuatorVector ActuatorVector::clamped(std::span<const double> values) {
  return ActuatorVector(clamp_unit(values));
}

void ActuatorVector::check_size(std::size_t dof) const {
  if (values_.size() != dof) {
    throw ValidationError("actuator vector has " + std::to_string(values_.size()) +
                          " values, profile expects " + std::to_string(dof));
  }
}

void VaPoint::validate() const {
  if (!(valence >= -1.0 && valence <= 1.0 && arousal >= -1.0 && arousal <= 1.0)) {
    throw ValidationError("VA point (" + std::to_string(valence) + ", " +
                          std::to_string(arousal) + ") outside [-1,1]^2");
  }
}

}  // namespace animaface
