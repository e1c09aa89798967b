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

#include "animaface/core_types.hpp"

namespace animaface {

/// Per-frame valence/arousal points of one performance.
class VaTrajectory {
 public:
  /// Throws ValidationError if empty or any point leaves [-1,1]^2.
  explicit VaTrajectory(std::vector<VaPoint> points);

  const std::vector<VaPoint>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }

 private:
  std::vector<VaPoint> points_;
};

struct HullPolygon {
  /// Counter-clockwise, no three consecutive collinear. Degenerate hulls hold
  /// the one or two extreme points.
  std::vector<VaPoint> vertices;
  double area = 0.0;
};

inline constexpr double kDefaultTrimFraction = 0.05;

/// Number of points trim_outliers removes from n points: ceil(fraction * n).
std::size_t trim_count(std::size_t n, double fraction);

/// Drops the trim_count() points farthest from the centroid of all points,
/// later frames first among equal distances. Survivors keep their order.
/// The result is empty when every point is removed (n == 1, fraction > 0).
/// Throws ValidationError for fraction outside [0,1).
std::vector<VaPoint> trim_outliers(const VaTrajectory& traj, double fraction);

/// Andrew's monotone chain. Throws ValidationError on an empty input.
HullPolygon convex_hull(std::span<const VaPoint> points);

/// |shoelace sum| / 2; 0 for fewer than three vertices.
double polygon_area(std::span<const VaPoint> vertices);

/// Emotion Dynamic Range: hull area of the trimmed trajectory.
double edr(const VaTrajectory& traj, double fraction = kDefaultTrimFraction);

struct NamedTrajectory {
  std::string name;
  VaTrajectory trajectory;
};

/// Standalone SVG of one translucent hull polygon per trajectory, the trimmed
/// points, and per-method EDR labels. Valence runs rightward, arousal upward.
std::string emit_hull_geometry(std::span<const NamedTrajectory> trajs,
                               double fraction = kDefaultTrimFraction);

/// Viewport geometry used by emit_hull_geometry.
struct PlotFrame {
  double size = 480.0;
  double margin = 40.0;

  double x(double valence) const { return margin + (valence + 1.0) * 0.5 * size; }
  double y(double arousal) const { return margin + (1.0 - arousal) * 0.5 * size; }
};

}  // namespace animaface
