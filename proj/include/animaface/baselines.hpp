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
#include <random>
#include <span>
#include <vector>

#include "animaface/core_types.hpp"

namespace animaface {

struct PairedSample {
  Coefficients blendshapes{};
  ActuatorVector actuators;
};

/// (blendshape, actuator) pairs backing the retrieval baselines.
class PairedDataset {
 public:
  /// Throws ValidationError if empty, if any blendshape is outside [0,1],
  /// or if actuator dimensions differ.
  explicit PairedDataset(std::vector<PairedSample> samples);

  const std::vector<PairedSample>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  std::size_t dof() const { return dof_; }

 private:
  std::vector<PairedSample> samples_;
  std::size_t dof_ = 0;
};

/// Seeded index sampler used by random_baseline: std::mt19937_64 seeded
/// with `seed`, reduced to [0, n) by rejection on the raw 64-bit outputs, so
/// sequences are identical across platforms and standard libraries.
class SampleIndexGenerator {
 public:
  explicit SampleIndexGenerator(std::uint64_t seed);
  std::size_t next(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

/// RT baseline: `frames` actuator vectors drawn uniformly with replacement.
std::vector<ActuatorVector> random_baseline(const PairedDataset& ds, std::size_t frames, std::uint64_t seed);

/// Index of the sample nearest to `query` in unweighted L2 over all 52
/// channels; the lowest index wins ties.
std::size_t nearest_sample(const PairedDataset& ds, const Coefficients& query);

/// NNR baseline: actuators of the nearest sample for every frame.
std::vector<ActuatorVector> nnr_baseline(const PairedDataset& ds, std::span<const BlendshapeFrame> frames);

}  // namespace animaface
