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

#include "doctest.h"

#include <numbers>
#include <random>
#include <regex>

#include "animaface/edr.hpp"
#include "oracles.hpp"

using namespace animaface;

namespace {

std::vector<VaPoint> random_cloud(std::mt19937_64& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<VaPoint> pts(n);
  for (auto& p : pts) p = {u(rng), u(rng)};
  return pts;
}

std::size_t count_matches(const std::string& text, const std::string& pattern) {
  const std::regex re(pattern);
  return static_cast<std::size_t>(std::distance(std::sregex_iterator(text.begin(), text.end(), re), std::sregex_iterator()));
}

}  // namespace

TEST_CASE("trim count is ceil(N/20) at the default fraction") {
  for (std::size_t n = 1; n <= 200; ++n) CHECK(trim_count(n, 0.05) == (n + 19) / 20);
  CHECK(trim_count(10, 0.0) == 0);
  CHECK(trim_count(10, 0.3) == 3);
  CHECK_THROWS_AS(trim_count(10, 1.0), ValidationError);
  CHECK_THROWS_AS(trim_count(10, -0.1), ValidationError);
}

TEST_CASE("trim_outliers") {
  SUBCASE("fraction 0 is the identity") {
    std::mt19937_64 rng(1);
    const auto pts = random_cloud(rng, 30);
    CHECK(trim_outliers(VaTrajectory(pts), 0.0) == pts);
  }
  SUBCASE("far point removed") {
    std::vector<VaPoint> pts(19, VaPoint{0.0, 0.0});
    pts.push_back({0.9, 0.9});
    const auto kept = trim_outliers(VaTrajectory(pts), 0.05);
    CHECK(kept == std::vector<VaPoint>(19, VaPoint{0.0, 0.0}));
  }
  SUBCASE("ties drop the latest frame") {
    std::vector<VaPoint> pts;
    for (int i = 0; i < 20; ++i) pts.push_back({0.1, 0.1});
    CHECK(trim_outliers(VaTrajectory(pts), 0.05).size() == 19);

    // Two equally far points: the later one goes.
    const std::vector<VaPoint> sym = {{-0.5, 0.0}, {0.0, 0.0}, {0.5, 0.0}};
    const auto kept = trim_outliers(VaTrajectory(sym), 0.05);
    CHECK(kept == std::vector<VaPoint>{{-0.5, 0.0}, {0.0, 0.0}});
  }
  SUBCASE("single point with any trimming is empty") {
    CHECK(trim_outliers(VaTrajectory({{0.2, 0.2}}), 0.05).empty());
    CHECK(edr(VaTrajectory({{0.2, 0.2}})) == 0.0);
  }
  CHECK_THROWS_AS(VaTrajectory({}), ValidationError);
  CHECK_THROWS_AS(VaTrajectory({{1.2, 0.0}}), ValidationError);
}

TEST_CASE("convex hull") {
  const std::vector<VaPoint> square = {{-1, -1}, {1, -1}, {1, 1}, {-1, 1}};
  const auto h = convex_hull(square);
  CHECK(h.vertices.size() == 4);
  CHECK(h.area == 4.0);

  const std::vector<VaPoint> line = {{0, 0}, {0.5, 0.5}, {1, 1}};
  const auto l = convex_hull(line);
  CHECK(l.area == 0.0);
  CHECK(l.vertices == std::vector<VaPoint>{{0, 0}, {1, 1}});

  CHECK(convex_hull(std::vector<VaPoint>{{0.3, 0.3}, {0.3, 0.3}}).vertices.size() == 1);
  CHECK_THROWS_AS(convex_hull(std::vector<VaPoint>{}), ValidationError);

  // Interior and edge-midpoint points are not vertices.
  const std::vector<VaPoint> busy = {{0, 0}, {1, 0}, {0.5, 0}, {1, 1}, {0, 1}, {0.5, 0.5}, {0, 0.5}};
  CHECK(convex_hull(busy).vertices.size() == 4);
}

TEST_CASE("hull matches gift wrapping on random clouds") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const auto pts = random_cloud(rng, 50);
    const auto ours = convex_hull(pts);
    const auto ref = oracle::gift_wrap(pts);
    REQUIRE(ours.vertices.size() == ref.size());
    auto a = ours.vertices;
    auto b = ref;
    auto lex = [](const VaPoint& p, const VaPoint& q) {
      return p.valence < q.valence || (p.valence == q.valence && p.arousal < q.arousal);
    };
    std::sort(a.begin(), a.end(), lex);
    std::sort(b.begin(), b.end(), lex);
    CHECK(a == b);
    CHECK(std::abs(ours.area - oracle::fan_area(ref)) < 1e-9);
  }
}

TEST_CASE("hull vertices are counter-clockwise") {
  std::mt19937_64 rng(78);
  const auto h = convex_hull(random_cloud(rng, 40));
  const auto& v = h.vertices;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& o = v[i];
    const auto& a = v[(i + 1) % v.size()];
    const auto& b = v[(i + 2) % v.size()];
    CHECK((a.valence - o.valence) * (b.arousal - o.arousal) - (a.arousal - o.arousal) * (b.valence - o.valence) > 0);
  }
}

TEST_CASE("polygon area") {
  CHECK(polygon_area(std::vector<VaPoint>{{0, 0}, {1, 0}, {0, 1}}) == 0.5);
  CHECK(polygon_area(std::vector<VaPoint>{}) == 0.0);

  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 2 * std::numbers::pi);
  std::uniform_real_distribution<double> radius(0.3, 0.9);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> angles(8);
    for (double& a : angles) a = u(rng);
    std::sort(angles.begin(), angles.end());
    const double r = radius(rng);
    std::vector<VaPoint> octagon;
    for (double a : angles) octagon.push_back({r * std::cos(a), r * std::sin(a)});
    CHECK(std::abs(polygon_area(octagon) - oracle::fan_area(octagon)) < 1e-12);
  }
}

TEST_CASE("edr values") {
  CHECK(std::abs(edr(VaTrajectory({{0, 0}, {0.2, 0}, {0.2, 0.2}, {0, 0.2}}), 0.0) - 0.04) < 1e-12);
  CHECK(edr(VaTrajectory(std::vector<VaPoint>(25, VaPoint{0.4, -0.3}))) == 0.0);

  SUBCASE("scaling about the centroid") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 50; ++trial) {
      const auto pts = random_cloud(rng, 40, -0.4, 0.4);
      VaPoint c{};
      for (const auto& p : pts) {
        c.valence += p.valence / pts.size();
        c.arousal += p.arousal / pts.size();
      }
      for (double s : {0.25, 0.5, 1.5, 2.0}) {
        std::vector<VaPoint> scaled;
        for (const auto& p : pts) scaled.push_back({c.valence + s * (p.valence - c.valence), c.arousal + s * (p.arousal - c.arousal)});
        const double base = edr(VaTrajectory(pts), 0.0);
        CHECK(std::abs(edr(VaTrajectory(scaled), 0.0) - s * s * base) <= 1e-9 * s * s * base);
      }
    }
  }

  SUBCASE("adding points never shrinks the hull") {
    std::mt19937_64 rng(13);
    auto pts = random_cloud(rng, 5);
    double prev = edr(VaTrajectory(pts), 0.0);
    for (int i = 0; i < 50; ++i) {
      pts.push_back(random_cloud(rng, 1)[0]);
      const double now = edr(VaTrajectory(pts), 0.0);
      CHECK(now >= prev - 1e-15);
      prev = now;
    }
  }

  SUBCASE("rigid motions leave EDR unchanged") {
    std::mt19937_64 rng(14);
    const auto pts = random_cloud(rng, 30, -0.5, 0.5);
    const double base = edr(VaTrajectory(pts));
    const double th = 0.7;
    std::vector<VaPoint> moved;
    for (const auto& p : pts) {
      moved.push_back({std::cos(th) * p.valence - std::sin(th) * p.arousal + 0.1,
                       std::sin(th) * p.valence + std::cos(th) * p.arousal - 0.05});
    }
    CHECK(edr(VaTrajectory(moved)) == doctest::Approx(base).epsilon(1e-9));
  }
}

TEST_CASE("hull plot") {
  std::mt19937_64 rng(15);
  const NamedTrajectory one{"ours", VaTrajectory(random_cloud(rng, 20, -0.5, 0.5))};
  std::string svg = emit_hull_geometry(std::vector{one});
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(count_matches(svg, "<polygon") == 1);

  const NamedTrajectory two{"rt", VaTrajectory(random_cloud(rng, 20))};
  svg = emit_hull_geometry(std::vector{one, two});
  CHECK(count_matches(svg, "<polygon") == 2);
  CHECK(count_matches(svg, "class=\"hull method-0\"") == 1);
  CHECK(count_matches(svg, "class=\"hull method-1\"") == 1);
  CHECK(svg.find("data-method=\"rt\"") != std::string::npos);
  CHECK(count_matches(svg, "class=\"edr-label\"") == 2);

  // Identical inputs give identical documents.
  CHECK(emit_hull_geometry(std::vector{one, two}) == svg);

  // Degenerate trajectories still get a (flat) polygon.
  const NamedTrajectory flat{"flat", VaTrajectory(std::vector<VaPoint>(5, VaPoint{0.1, 0.1}))};
  CHECK(count_matches(emit_hull_geometry(std::vector{flat}), "<polygon") == 1);

  const PlotFrame f;
  CHECK(f.x(-1.0) == 40.0);
  CHECK(f.x(1.0) == 520.0);
  CHECK(f.y(1.0) == 40.0);
  CHECK(f.y(-1.0) == 520.0);
}
