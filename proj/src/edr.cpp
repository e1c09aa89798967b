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

#include "animaface/edr.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

namespace animaface {

namespace {

double cross(const VaPoint& o, const VaPoint& a, const VaPoint& b) {
  return (a.valence - o.valence) * (b.arousal - o.arousal) - (a.arousal - o.arousal) * (b.valence - o.valence);
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fmt(double v, const char* spec = "%.2f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

constexpr std::array<const char*, 8> kPalette = {"#d62728", "#1f77b4", "#2ca02c", "#ff7f0e",
                                                 "#9467bd", "#8c564b", "#e377c2", "#17becf"};

}  // namespace

VaTrajectory::VaTrajectory(std::vector<VaPoint> points) : points_(std::move(points)) {
  if (points_.empty()) throw ValidationError("VA trajectory is empty");
  for (const VaPoint& p : points_) p.validate();
}

std::size_t trim_count(std::size_t n, double fraction) {
  if (!(fraction >= 0.0 && fraction < 1.0)) {
    throw ValidationError("trim fraction must lie in [0,1), got " + std::to_string(fraction));
  }
  const double exact = fraction * static_cast<double>(n);
  // Products such as 0.05 * 60 may land an ulp above an integer.
  const double nearest = std::round(exact);
  const double k = std::abs(exact - nearest) <= 1e-9 * std::max(1.0, exact) ? nearest : std::ceil(exact);
  return std::min(n, static_cast<std::size_t>(k));
}

std::vector<VaPoint> trim_outliers(const VaTrajectory& traj, double fraction) {
  const std::vector<VaPoint>& pts = traj.points();
  const std::size_t n = pts.size();
  const std::size_t remove = trim_count(n, fraction);
  if (remove == 0) return pts;

  double cv = 0.0, ca = 0.0;
  for (const VaPoint& p : pts) {
    cv += p.valence;
    ca += p.arousal;
  }
  cv /= static_cast<double>(n);
  ca /= static_cast<double>(n);

  std::vector<double> dist(n);
  for (std::size_t i = 0; i < n; ++i) dist[i] = std::hypot(pts[i].valence - cv, pts[i].arousal - ca);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (dist[a] != dist[b]) return dist[a] > dist[b];
    return a > b;
  });

  std::vector<bool> dropped(n, false);
  for (std::size_t k = 0; k < remove; ++k) dropped[order[k]] = true;

  std::vector<VaPoint> out;
  out.reserve(n - remove);
  for (std::size_t i = 0; i < n; ++i) {
    if (!dropped[i]) out.push_back(pts[i]);
  }
  return out;
}

HullPolygon convex_hull(std::span<const VaPoint> points) {
  if (points.empty()) throw ValidationError("convex hull of an empty point set");

  std::vector<VaPoint> p(points.begin(), points.end());
  std::sort(p.begin(), p.end(), [](const VaPoint& a, const VaPoint& b) {
    return a.valence < b.valence || (a.valence == b.valence && a.arousal < b.arousal);
  });
  p.erase(std::unique(p.begin(), p.end()), p.end());

  HullPolygon hull;
  if (p.size() < 3) {
    hull.vertices = p;
    return hull;
  }

  std::vector<VaPoint> h(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p[i]) <= 0.0) --k;
    h[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(h[k - 2], h[k - 1], p[i]) <= 0.0) --k;
    h[k++] = p[i];
  }
  h.resize(k - 1);

  hull.vertices = std::move(h);
  hull.area = polygon_area(hull.vertices);
  return hull;
}

double polygon_area(std::span<const VaPoint> vertices) {
  const std::size_t n = vertices.size();
  if (n < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const VaPoint& a = vertices[i];
    const VaPoint& b = vertices[(i + 1) % n];
    twice += a.valence * b.arousal - b.valence * a.arousal;
  }
  return std::abs(twice) / 2.0;
}

double edr(const VaTrajectory& traj, double fraction) {
  const std::vector<VaPoint> kept = trim_outliers(traj, fraction);
  if (kept.empty()) return 0.0;
  return convex_hull(kept).area;
}

std::string emit_hull_geometry(std::span<const NamedTrajectory> trajs, double fraction) {
  if (trajs.empty()) throw ValidationError("hull plot needs at least one trajectory");

  const PlotFrame frame;
  const double full = frame.size + 2.0 * frame.margin;
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << full << "\" height=\"" << full
      << "\" viewBox=\"0 0 " << full << ' ' << full << "\">\n"
      << "  <rect x=\"" << frame.margin << "\" y=\"" << frame.margin << "\" width=\"" << frame.size
      << "\" height=\"" << frame.size << "\" fill=\"white\" stroke=\"#444\"/>\n"
      << "  <line class=\"axis\" x1=\"" << frame.x(-1) << "\" y1=\"" << frame.y(0) << "\" x2=\"" << frame.x(1)
      << "\" y2=\"" << frame.y(0) << "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n"
      << "  <line class=\"axis\" x1=\"" << frame.x(0) << "\" y1=\"" << frame.y(-1) << "\" x2=\"" << frame.x(0)
      << "\" y2=\"" << frame.y(1) << "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n"
      << "  <text x=\"" << frame.x(1) << "\" y=\"" << frame.y(0) - 6
      << "\" text-anchor=\"end\" font-size=\"12\">Valence</text>\n"
      << "  <text x=\"" << frame.x(0) + 6 << "\" y=\"" << frame.y(1) + 14 << "\" font-size=\"12\">Arousal</text>\n";

  for (std::size_t i = 0; i < trajs.size(); ++i) {
    const NamedTrajectory& t = trajs[i];
    const std::string color = kPalette[i % kPalette.size()];
    const std::string id = "method-" + std::to_string(i);
    const std::vector<VaPoint> kept = trim_outliers(t.trajectory, fraction);
    const HullPolygon hull = kept.empty() ? HullPolygon{} : convex_hull(kept);

    svg << "  <g id=\"" << id << "\" data-method=\"" << xml_escape(t.name) << "\">\n";
    svg << "    <polygon class=\"hull " << id << "\" points=\"";
    for (std::size_t v = 0; v < hull.vertices.size(); ++v) {
      if (v) svg << ' ';
      svg << fmt(frame.x(hull.vertices[v].valence)) << ',' << fmt(frame.y(hull.vertices[v].arousal));
    }
    svg << "\" fill=\"" << color << "\" fill-opacity=\"0.25\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
    for (const VaPoint& p : kept) {
      svg << "    <circle cx=\"" << fmt(frame.x(p.valence)) << "\" cy=\"" << fmt(frame.y(p.arousal))
          << "\" r=\"1.5\" fill=\"" << color << "\"/>\n";
    }
    svg << "    <text class=\"edr-label\" x=\"" << frame.margin + 8 << "\" y=\"" << frame.margin + 18 + 16.0 * i
        << "\" font-size=\"13\" fill=\"" << color << "\">" << xml_escape(t.name)
        << ": EDR=" << fmt(hull.area, "%.4f") << "</text>\n";
    svg << "  </g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace animaface
