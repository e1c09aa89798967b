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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "animaface/core_types.hpp"
#include "animaface/edr.hpp"
#include "animaface/smoothing.hpp"

namespace animaface {

struct CompareInputs {
  std::filesystem::path blendshapes;
  /// (method name, VA trajectory CSV) in report order. Any method name is
  /// accepted, so externally produced results can be scored alongside.
  std::vector<std::pair<std::string, std::filesystem::path>> va_files;
  std::filesystem::path profile;
  std::filesystem::path dataset;
  std::filesystem::path output_dir;
};

struct CompareOptions {
  SmoothingConfig smoothing;
  std::uint64_t seed = 0;
  double trim_fraction = kDefaultTrimFraction;
  /// NNR queries use the smoothed blendshapes, like the main method.
  bool nnr_smoothed = true;
  ValidationMode mode = ValidationMode::kStrict;
};

struct MethodEdr {
  std::string method;
  double edr = 0.0;
  std::size_t va_frames = 0;
};

struct CompareReport {
  std::size_t frames = 0;
  std::vector<MethodEdr> methods;
  std::filesystem::path motors_ours, motors_rt, motors_nnr;
  std::filesystem::path table, plot, json;
};

/// Retargets the clip with the profile, runs the RT and NNR baselines, scores
/// every VA file, and writes motor CSVs, a Markdown table, a JSON report and
/// the hull plot into output_dir. All input errors are collected and raised
/// together as one ParseError.
CompareReport run_compare(const CompareInputs& in, const CompareOptions& opts);

}  // namespace animaface
