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

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "animaface/baselines.hpp"
#include "animaface/core_types.hpp"
#include "animaface/edr.hpp"

namespace animaface {

struct BlendshapeCsvOptions {
  ValidationMode mode = ValidationMode::kStrict;
  /// Used to derive timestamps when the file has no timestamp_ms column.
  double fps = 25.0;
};

struct BlendshapeCsvResult {
  std::vector<BlendshapeFrame> frames;
  ValidationReport report;
};

/// Parses a header-keyed blendshape CSV. All 52 channel columns are required
/// in any order; `frame`, `timestamp_ms` and a complete `yaw,pitch,roll`
/// triple are optional. Timestamps come from timestamp_ms, else frame / fps,
/// else row / fps. Throws ParseError naming the missing column or the
/// offending row and column; ValidationError for range violations (strict)
/// or non-increasing timestamps.
BlendshapeCsvResult parse_blendshape_csv(std::string_view text, const BlendshapeCsvOptions& opts = {});

/// Header `frame,timestamp_ms,<52 channels>[,yaw,pitch,roll]`, shortest
/// round-trip decimal formatting.
std::string write_blendshape_csv(std::span<const BlendshapeFrame> frames);

/// `frame,valence,arousal`.
VaTrajectory parse_va_csv(std::string_view text);
std::string write_va_csv(const VaTrajectory& traj);

/// `frame,<52 channels>,motor_00..motor_{d-1}` in any column order.
PairedDataset parse_dataset_csv(std::string_view text);
std::string write_dataset_csv(const PairedDataset& ds);

/// `frame,motor_00..motor_{d-1}`.
std::vector<ActuatorVector> parse_motor_csv(std::string_view text);
std::string write_motor_csv(std::span<const ActuatorVector> motors);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace animaface
