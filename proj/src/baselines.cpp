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

#include "animaface/baselines.hpp"

#include <limits>

namespace animaface {

PairedDataset::PairedDataset(std::vector<PairedSample> samples) : samples_(std::move(samples)) {
  if (samples_.empty()) throw ValidationError("paired dataset is empty");
  dof_ = samples_.front().actuators.size();
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const PairedSample& s = samples_[i];
    if (s.actuators.size() != dof_) {
      throw ValidationError("sample " + std::to_string(i) + " has " + std::to_string(s.actuators.size()) +
                            " actuators, expected " + std::to_string(dof_));
    }
    for (std::size_t c = 0; c < kChannelCount; ++c) {
      if (!(s.blendshapes[c] >= 0.0 && s.blendshapes[c] <= 1.0)) {
        throw ValidationError("sample " + std::to_string(i) + " channel " + std::string(kArkitChannels[c]) +
                              " outside [0,1]");
      }
    }
  }
}

SampleIndexGenerator::SampleIndexGenerator(std::uint64_t seed) : engine_(seed) {}

std::size_t SampleIndexGenerator::next(std::size_t n) {
  if (n == 0) throw ValidationError("cannot sample from an empty range");
  const std::uint64_t range = n;
  // Largest multiple of n representable; draws at or above it are rejected.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return static_cast<std::size_t>(x % range);
}

std::vector<ActuatorVector> random_baseline(const PairedDataset& ds, std::size_t frames, std::uint64_t seed) {
  if (frames == 0) throw ValidationError("random baseline needs at least one frame");
  SampleIndexGenerator gen(seed);
  std::vector<ActuatorVector> out;
  out.reserve(frames);
  for (std::size_t t = 0; t < frames; ++t) out.push_back(ds.samples()[gen.next(ds.size())].actuators);
  return out;
}

std::size_t nearest_sample(const PairedDataset& ds, const Coefficients& query) {
  std::size_t best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const Coefficients& b = ds.samples()[i].blendshapes;
    double d2 = 0.0;
    for (std::size_t c = 0; c < kChannelCount; ++c) {
      const double diff = b[c] - query[c];
      d2 += diff * diff;
    }
    if (d2 < best_d2) {
      best_d2 = d2;
      best = i;
    }
  }
  return best;
}

std::vector<ActuatorVector> nnr_baseline(const PairedDataset& ds, std::span<const BlendshapeFrame> frames) {
  if (frames.empty()) throw ValidationError("nearest-neighbour baseline needs at least one frame");
  std::vector<ActuatorVector> out;
  out.reserve(frames.size());
  for (const BlendshapeFrame& f : frames) out.push_back(ds.samples()[nearest_sample(ds, f.coefficients())].actuators);
  return out;
}

}  // namespace animaface
