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
#include <span>
#include <string>
#include <vector>

namespace animaface {

/// One authored correspondence: at `intensity`, the semantic contributes
/// `delta` (offset from the rest pose) to every actuator.
struct Anchor {
  double intensity = 0.0;
  std::vector<double> delta;

  friend bool operator==(const Anchor&, const Anchor&) = default;
};

/// Piecewise-linear map from one semantic intensity to a d-vector of
/// actuator offsets.
///
/// An implicit anchor (0, zero) precedes the explicit ones, so the map is
/// zero at neutral. Between adjacent anchors the value is the affine segment
/// through both; above the last anchor the last delta is held.
class PiecewiseMap {
 public:
  /// Throws ValidationError unless intensities lie in (0,1] and strictly
  /// increase, every delta has `dof` finite components, mask indices are
  /// unique and < dof, and every delta component outside the mask is 0.
  /// An empty anchor list is a map that is identically zero.
  PiecewiseMap(std::string semantic, std::size_t dof, std::vector<Anchor> anchors,
               std::vector<std::size_t> mask);

  const std::string& semantic() const { return semantic_; }
  std::size_t dof() const { return dof_; }
  const std::vector<Anchor>& anchors() const { return anchors_; }
  /// Sorted actuator indices this semantic may drive.
  const std::vector<std::size_t>& mask() const { return mask_; }

  /// Adds the map's value at `beta` into `out` (size dof). No range check.
  void accumulate(double beta, std::span<double> out) const;

 private:
  std::string semantic_;
  std::size_t dof_;
  std::vector<Anchor> anchors_;
  std::vector<std::size_t> mask_;
};

/// Value of the map at `beta`. Throws ValidationError if beta is outside
/// [0,1]. Hitting an anchor intensity returns that anchor's delta exactly.
std::vector<double> eval_piecewise(const PiecewiseMap& map, double beta);

}  // namespace animaface
