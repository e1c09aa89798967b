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
#include <optional>
#include <span>
#include <vector>

#include "animaface/core_types.hpp"

namespace animaface {

/// Gaussian temporal filter parameters, in frames.
struct SmoothingConfig {
  double sigma = 1.0;
  /// Half-window; defaults to ceil(3 * sigma).
  std::optional<std::size_t> radius;

  std::size_t effective_radius() const;
};

/// Normalized discrete Gaussian weights for offsets -r..r (size 2r+1).
/// sigma == 0 yields the identity kernel {1}. Throws ValidationError for a
/// negative or non-finite sigma.
std::vector<double> gaussian_kernel(const SmoothingConfig& cfg);

/// Convolves one signal with the kernel, mirroring the signal about its first
/// and last samples (the edge sample itself is not repeated).
std::vector<double> smooth_signal(std::span<const double> signal, const SmoothingConfig& cfg);

/// Per-channel smoothing of a frame sequence. Timestamps and poses are kept;
/// coefficients are re-clamped to [0,1]. Throws ValidationError on an empty
/// sequence or invalid config.
std::vector<BlendshapeFrame> smooth_sequence(std::span<const BlendshapeFrame> frames,
                                             const SmoothingConfig& cfg);

}  // namespace animaface
