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

#include "animaface/piecewise_map.hpp"

#include <algorithm>
#include <cmath>

#include "animaface/core_types.hpp"

namespace animaface {

PiecewiseMap::PiecewiseMap(std::string semantic, std::size_t dof, std::vector<Anchor> anchors,
                           std::vector<std::size_t> mask)
    : semantic_(std::move(semantic)), dof_(dof), anchors_(std::move(anchors)), mask_(std::move(mask)) {
  const auto fail = [this](const std::string& what) {
    throw ValidationError("semantic '" + semantic_ + "': " + what);
  };

  std::sort(mask_.begin(), mask_.end());
  if (std::adjacent_find(mask_.begin(), mask_.end()) != mask_.end()) fail("duplicate mask index");
  if (!mask_.empty() && mask_.back() >= dof_) {
    fail("mask index " + std::to_string(mask_.back()) + " >= dof " + std::to_string(dof_));
  }

  std::vector<bool> in_mask(dof_, false);
  for (std::size_t m : mask_) in_mask[m] = true;

  double previous = 0.0;
  for (std::size_t k = 0; k < anchors_.size(); ++k) {
    const Anchor& a = anchors_[k];
    if (!(a.intensity > 0.0 && a.intensity <= 1.0)) {
      fail("anchor intensity " + std::to_string(a.intensity) + " outside (0,1]");
    }
    if (!(a.intensity > previous)) {
      fail("anchor intensities must strictly increase (duplicate or unordered at " +
           std::to_string(a.intensity) + ")");
    }
    previous = a.intensity;
    if (a.delta.size() != dof_) {
      fail("anchor delta has " + std::to_string(a.delta.size()) + " values, expected " +
           std::to_string(dof_));
    }
    for (std::size_t c = 0; c < dof_; ++c) {
      if (!std::isfinite(a.delta[c])) fail("non-finite anchor delta");
      if (!in_mask[c] && a.delta[c] != 0.0) {
        fail("anchor delta on actuator " + std::to_string(c) + " lies outside the channel mask");
      }
    }
  }
}

void PiecewiseMap::accumulate(double beta, std::span<double> out) const {
  if (anchors_.empty() || beta <= 0.0) return;

  auto upper = std::upper_bound(anchors_.begin(), anchors_.end(), beta,
                                [](double b, const Anchor& a) { return b < a.intensity; });
  if (upper == anchors_.end()) {
    const Anchor& last = anchors_.back();
    for (std::size_t c : mask_) out[c] += last.delta[c];
    return;
  }

  const std::size_t k = static_cast<std::size_t>(upper - anchors_.begin());
  const double lo_tau = k == 0 ? 0.0 : anchors_[k - 1].intensity;
  const double t = (beta - lo_tau) / (upper->intensity - lo_tau);
  for (std::size_t c : mask_) {
    const double lo = k == 0 ? 0.0 : anchors_[k - 1].delta[c];
    out[c] += lo + t * (upper->delta[c] - lo);
  }
}

std::vector<double> eval_piecewise(const PiecewiseMap& map, double beta) {
  if (!(beta >= 0.0 && beta <= 1.0)) {
    throw ValidationError("intensity " + std::to_string(beta) + " for semantic '" +
                          map.semantic() + "' outside [0,1]");
  }
  std::vector<double> out(map.dof(), 0.0);
  map.accumulate(beta, out);
  return out;
}

}  // namespace animaface
