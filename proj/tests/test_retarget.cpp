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

#include <random>

#include "animaface/retarget.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace animaface;

namespace {

ProfileSpec with_neck(ProfileSpec spec, double gain = 1.0) {
  spec.neck = NeckMapping{{29, gain, 0.5}, {30, gain, 0.5}, {31, gain, 0.5}};
  return spec;
}

ProfileSpec nose_merge_spec() {
  ProfileSpec spec = fixture::minimal_spec();
  std::erase(spec.excluded, "noseSneerLeft");
  std::erase(spec.excluded, "noseSneerRight");
  spec.merges.push_back({"noseSneer", {"noseSneerLeft", "noseSneerRight"}});
  std::vector<double> pose = spec.rest_pose;
  pose[10] = 0.8;
  spec.mappings["noseSneer"].anchors.push_back({1.0, pose});
  return spec;
}

}  // namespace

TEST_CASE("merge_channels") {
  const auto profile = compile_profile(nose_merge_spec());
  auto sem = merge_channels(fixture::frame_with({{"noseSneerLeft", 0.2}, {"noseSneerRight", 0.4}}), profile);
  CHECK(sem.at("noseSneer") == doctest::Approx(0.3).epsilon(1e-15));

  sem = merge_channels(fixture::frame_with({}), profile);
  for (const auto& [name, beta] : sem) CHECK(beta == 0.0);

  sem = merge_channels(fixture::frame_with({{"cheekPuff", 0.9}}), profile);
  CHECK(sem.count("cheekPuff") == 0);
  CHECK(sem.size() == 2);
}

TEST_CASE("neutral frame gives the rest pose exactly") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const ProfileSpec spec = oracle::random_spec(rng, 24);
    const auto profile = compile_profile(spec);
    CHECK(retarget_frame(profile, fixture::frame_with({})).values() == spec.rest_pose);
  }
}

TEST_CASE("one active semantic adds its delta") {
  const auto profile = compile_profile(fixture::minimal_spec());
  const auto m = retarget_frame(profile, fixture::frame_with({{"jawOpen", 0.5}}));
  const auto expected = oracle::brute_force_retarget(fixture::minimal_spec(), fixture::frame_with({{"jawOpen", 0.5}}).coefficients());
  CHECK(m[17] == doctest::Approx(0.7).epsilon(1e-12));
  for (std::size_t a = 0; a < 32; ++a) CHECK(std::abs(m[a] - expected[a]) < 1e-12);
}

TEST_CASE("the sum is clamped once") {
  // Rest 0.5 on channel 5; both semantics add +0.4 there.
  ProfileSpec spec = fixture::minimal_spec();
  std::erase(spec.excluded, "mouthClose");
  std::erase(spec.excluded, "mouthFunnel");
  std::vector<double> up = spec.rest_pose;
  up[5] = 0.9;
  std::vector<double> down = spec.rest_pose;
  down[5] = 0.0;
  spec.mappings["mouthClose"].anchors.push_back({1.0, up});
  spec.mappings["mouthFunnel"].anchors.push_back({1.0, up});
  const auto profile = compile_profile(spec);
  // 0.5 + 0.4 + 0.4 = 1.3
  CHECK(retarget_frame(profile, fixture::frame_with({{"mouthClose", 1.0}, {"mouthFunnel", 1.0}}))[5] == 1.0);

  // A negative delta cancels part of the positive one before the clamp:
  // 0.5 + 0.4 - 0.5.
  spec.mappings["mouthFunnel"].anchors[0].pose = down;
  const auto cancel = compile_profile(spec);
  CHECK(retarget_frame(cancel, fixture::frame_with({{"mouthClose", 1.0}, {"mouthFunnel", 1.0}}))[5] ==
        doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("random frames agree with the brute-force oracle and stay in range") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 30; ++trial) {
    const ProfileSpec spec = oracle::random_spec(rng, 20);
    const auto profile = compile_profile(spec);
    for (int f = 0; f < 20; ++f) {
      const auto beta = oracle::random_coefficients(rng, 0.5);
      const auto m = retarget_frame(profile, BlendshapeFrame::make(beta, 0.0));
      const auto expected = oracle::brute_force_retarget(spec, beta);
      for (std::size_t a = 0; a < spec.dof; ++a) {
        CHECK(std::abs(m[a] - expected[a]) < 1e-9);
        CHECK(m[a] >= 0.0);
        CHECK(m[a] <= 1.0);
      }
    }
  }
}

TEST_CASE("excluded channels never move the robot") {
  const auto profile = compile_profile(fixture::minimal_spec());
  Coefficients c{};
  c.fill(1.0);
  c[17] = 0.0;
  CHECK(retarget_frame(profile, BlendshapeFrame::make(c, 0.0)).values() == fixture::minimal_spec().rest_pose);
}

TEST_CASE("neck mapping") {
  const auto profile = compile_profile(with_neck(fixture::minimal_spec()));
  auto cmds = map_head_pose(profile, {0.0, 0.0, 0.0});
  for (const auto& c : cmds) CHECK(c.value == 0.5);
  CHECK(cmds[0].motor == 29);

  cmds = map_head_pose(profile, {0.5, 0.0, 0.0});
  CHECK(cmds[0].value == 1.0);
  cmds = map_head_pose(profile, {0.25, -0.1, 3.0});
  CHECK(cmds[0].value == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(cmds[1].value == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(cmds[2].value == 1.0);

  CHECK_THROWS_AS(map_head_pose(compile_profile(fixture::minimal_spec()), {}), ValidationError);

  Coefficients c{};
  const auto m = retarget_frame(profile, BlendshapeFrame::make(c, 0.0, HeadPose{0.25, 0.0, 0.0}));
  CHECK(m[29] == doctest::Approx(0.75));
  CHECK(m[17] == 0.5);
}

TEST_CASE("retarget_sequence") {
  const auto profile = compile_profile(nose_merge_spec());
  SUBCASE("single neutral frame") {
    const auto out = retarget_sequence(profile, std::vector{fixture::frame_with({})}, {});
    REQUIRE(out.size() == 1);
    CHECK(out[0] == profile.rest_pose());
  }

  std::mt19937_64 rng(4);
  std::vector<BlendshapeFrame> frames;
  for (int t = 0; t < 10; ++t) frames.push_back(BlendshapeFrame::make(oracle::random_coefficients(rng), t * 40.0));

  SUBCASE("sigma 0 is frame-wise") {
    const auto out = retarget_sequence(profile, frames, {0.0, std::nullopt});
    for (std::size_t t = 0; t < frames.size(); ++t) CHECK(out[t] == retarget_frame(profile, frames[t]));
  }
  SUBCASE("composition of smoothing and retargeting") {
    const auto out = retarget_sequence(profile, frames, {1.0, std::nullopt});
    for (std::size_t t = 0; t < frames.size(); ++t) {
      Coefficients smoothed{};
      for (std::size_t c = 0; c < kChannelCount; ++c) {
        std::vector<double> x;
        for (const auto& f : frames) x.push_back(f[c]);
        smoothed[c] = std::min(1.0, std::max(0.0, oracle::padded_gaussian(x, 1.0, 3)[t]));
      }
      const auto expected = oracle::brute_force_retarget(nose_merge_spec(), smoothed);
      for (std::size_t a = 0; a < profile.dof(); ++a) CHECK(std::abs(out[t][a] - expected[a]) < 1e-9);
    }
  }
}
