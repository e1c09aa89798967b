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
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace animaface {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a value-range or shape invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Text input (CSV, profile document) could not be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

inline constexpr std::size_t kChannelCount = 52;

// Canonical ARKit blendshape ordering. Files carry names in their headers and
// are reordered against this table on load.
inline constexpr std::array<std::string_view, kChannelCount> kArkitChannels = {
    "eyeBlinkLeft",     "eyeLookDownLeft",   "eyeLookInLeft",      "eyeLookOutLeft",
    "eyeLookUpLeft",    "eyeSquintLeft",     "eyeWideLeft",        "eyeBlinkRight",
    "eyeLookDownRight", "eyeLookInRight",    "eyeLookOutRight",    "eyeLookUpRight",
    "eyeSquintRight",   "eyeWideRight",      "jawForward",         "jawLeft",
    "jawRight",         "jawOpen",           "mouthClose",         "mouthFunnel",
    "mouthPucker",      "mouthLeft",         "mouthRight",         "mouthSmileLeft",
    "mouthSmileRight",  "mouthFrownLeft",    "mouthFrownRight",    "mouthDimpleLeft",
    "mouthDimpleRight", "mouthStretchLeft",  "mouthStretchRight",  "mouthRollLower",
    "mouthRollUpper",   "mouthShrugLower",   "mouthShrugUpper",    "mouthPressLeft",
    "mouthPressRight",  "mouthLowerDownLeft", "mouthLowerDownRight", "mouthUpperUpLeft",
    "mouthUpperUpRight", "browDownLeft",     "browDownRight",      "browInnerUp",
    "browOuterUpLeft",  "browOuterUpRight",  "cheekPuff",          "cheekSquintLeft",
    "cheekSquintRight", "noseSneerLeft",     "noseSneerRight",     "tongueOut",
};

/// Position of `name` in the canonical ordering. Throws ValidationError for
/// unknown names.
std::size_t channel_index(std::string_view name);

/// Non-throwing lookup.
std::optional<std::size_t> find_channel(std::string_view name) noexcept;

/// Componentwise min(1, max(0, x)). Throws ValidationError on NaN or inf.
std::vector<double> clamp_unit(std::span<const double> values);

enum class ValidationMode { kStrict, kLenient };

/// Counts values clamped in lenient mode.
struct ValidationReport {
  std::size_t clamped = 0;
};

struct HeadPose {
  double yaw = 0.0;
  double pitch = 0.0;
  double roll = 0.0;

  /// Throws ValidationError unless every angle is finite with |angle| <= pi.
  void validate() const;

  friend bool operator==(const HeadPose&, const HeadPose&) = default;
};

using Coefficients = std::array<double, kChannelCount>;

/// One video frame of 52 blendshape intensities in canonical order.
class BlendshapeFrame {
 public:
  BlendshapeFrame() { coefficients_.fill(0.0); }

  /// Validates (strict) or clamps (lenient) the coefficients. Strict mode
  /// throws ValidationError naming the first out-of-range channel.
  static BlendshapeFrame make(const Coefficients& coefficients, double timestamp_ms,
                              std::optional<HeadPose> pose = std::nullopt,
                              ValidationMode mode = ValidationMode::kStrict,
                              ValidationReport* report = nullptr);

  const Coefficients& coefficients() const { return coefficients_; }
  double operator[](std::size_t channel) const { return coefficients_[channel]; }
  double at(std::string_view channel) const { return coefficients_[channel_index(channel)]; }
  double timestamp_ms() const { return timestamp_ms_; }
  const std::optional<HeadPose>& pose() const { return pose_; }

  /// Copy with replaced coefficients (already in range).
  BlendshapeFrame with_coefficients(const Coefficients& coefficients) const;

  friend bool operator==(const BlendshapeFrame&, const BlendshapeFrame&) = default;

 private:
  Coefficients coefficients_{};
  double timestamp_ms_ = 0.0;
  std::optional<HeadPose> pose_;
};

/// Throws ValidationError unless timestamps strictly increase.
void check_timestamps(std::span<const BlendshapeFrame> frames);

/// d normalized motor positions, each in [0,1].
class ActuatorVector {
 public:
  ActuatorVector() = default;
  /// Throws ValidationError if any value is outside [0,1] or non-finite.
  explicit ActuatorVector(std::vector<double> values);

  /// Clamps instead of throwing (non-finite still throws).
  static ActuatorVector clamped(std::span<const double> values);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }
  std::span<const double> span() const { return values_; }

  /// Throws ValidationError when size() != dof.
  void check_size(std::size_t dof) const;

  friend bool operator==(const ActuatorVector&, const ActuatorVector&) = default;

 private:
  std::vector<double> values_;
};

struct VaPoint {
  double valence = 0.0;
  double arousal = 0.0;

  /// Throws ValidationError unless both components are within [-1,1].
  void validate() const;

  friend bool operator==(const VaPoint&, const VaPoint&) = default;
};

}  // namespace animaface
