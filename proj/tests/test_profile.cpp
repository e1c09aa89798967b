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

#include "animaface/csv_io.hpp"
#include "animaface/profile.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace animaface;

namespace {

constexpr const char* kMinimalYaml = R"(
robot:
  dof: 4
  rest_pose: [0.5, 0.5, 0.5, 0.5]
excluded: [EXCLUDED]
mappings:
  jawOpen:
    anchors:
      - {intensity: 1.0, pose: [0.5, 0.9, 0.5, 0.5]}
)";

std::string minimal_yaml_with(const std::string& extra_mappings, const std::string& skip = "jawOpen") {
  std::string excluded;
  for (auto name : kArkitChannels) {
    if (name == "jawOpen" || name == skip) continue;
    if (!excluded.empty()) excluded += ", ";
    excluded += name;
  }
  std::string doc = kMinimalYaml;
  doc.replace(doc.find("EXCLUDED"), 8, excluded);
  return doc + extra_mappings;
}

}  // namespace

TEST_CASE("minimal document compiles to one single-anchor map") {
  const auto profile = load_profile(minimal_yaml_with(""));
  REQUIRE(profile.maps().size() == 1);
  const PiecewiseMap& jaw = profile.maps()[0];
  CHECK(jaw.semantic() == "jawOpen");
  REQUIRE(jaw.anchors().size() == 1);
  CHECK(jaw.anchors()[0].delta == std::vector<double>{0.0, 0.4, 0.0, 0.0});
  CHECK(jaw.mask() == std::vector<std::size_t>{1});
  CHECK(profile.inputs_of(0) == std::vector<std::size_t>{17});
  CHECK(profile.fps() == 25);
}

TEST_CASE("the d=32 fixture compiles the same way as its YAML form") {
  const auto profile = compile_profile(fixture::minimal_spec());
  REQUIRE(profile.maps().size() == 1);
  CHECK(profile.maps()[0].anchors()[0].delta[17] == doctest::Approx(0.4).epsilon(1e-15));
}

TEST_CASE("duplicate anchor intensity names the semantic") {
  const std::string doc = minimal_yaml_with(R"(
  mouthClose:
    anchors:
      - {intensity: 0.5, pose: [0.5, 0.5, 0.6, 0.5]}
      - {intensity: 0.5, pose: [0.5, 0.5, 0.7, 0.5]}
)", "mouthClose");
  CHECK_THROWS_WITH_AS(load_profile(doc), doctest::Contains("mouthClose"), ValidationError);
}

TEST_CASE("merge rule resolves both inputs to one semantic") {
  ProfileSpec spec = fixture::minimal_spec();
  std::erase(spec.excluded, "noseSneerLeft");
  std::erase(spec.excluded, "noseSneerRight");
  spec.merges.push_back({"noseSneer", {"noseSneerLeft", "noseSneerRight"}});
  std::vector<double> pose = spec.rest_pose;
  pose[10] = 0.8;
  spec.mappings["noseSneer"].anchors.push_back({1.0, pose});

  const auto profile = compile_profile(spec);
  const PiecewiseMap* map = profile.find_map("noseSneer");
  REQUIRE(map != nullptr);
  const std::size_t idx = static_cast<std::size_t>(map - profile.maps().data());
  CHECK(profile.inputs_of(idx) == std::vector<std::size_t>{channel_index("noseSneerLeft"), channel_index("noseSneerRight")});
  CHECK(profile.find_map("noseSneerLeft") == nullptr);
}

TEST_CASE("every channel must be accounted for exactly once") {
  ProfileSpec spec = fixture::minimal_spec();
  std::erase(spec.excluded, "cheekPuff");
  CHECK_THROWS_WITH_AS(compile_profile(spec), doctest::Contains("cheekPuff"), ValidationError);

  spec = fixture::minimal_spec();
  spec.excluded.push_back("jawOpen");
  CHECK_THROWS_WITH_AS(compile_profile(spec), doctest::Contains("jawOpen"), ValidationError);

  spec = fixture::minimal_spec();
  spec.mappings["notAChannel"].anchors.push_back({1.0, spec.rest_pose});
  CHECK_THROWS_AS(compile_profile(spec), ValidationError);
}

TEST_CASE("structural validation") {
  SUBCASE("rest pose out of range") {
    ProfileSpec spec = fixture::minimal_spec();
    spec.rest_pose[3] = 1.5;
    CHECK_THROWS_WITH_AS(compile_profile(spec), doctest::Contains("/robot/rest_pose"), ValidationError);
  }
  SUBCASE("pose length") {
    ProfileSpec spec = fixture::minimal_spec();
    spec.mappings["jawOpen"].anchors[0].pose.pop_back();
    CHECK_THROWS_AS(compile_profile(spec), ValidationError);
  }
  SUBCASE("neck motor beyond dof") {
    ProfileSpec spec = fixture::minimal_spec();
    spec.neck = NeckMapping{{29, 1.0, 0.5}, {30, 1.0, 0.5}, {32, 1.0, 0.5}};
    CHECK_THROWS_AS(compile_profile(spec), ValidationError);
  }
  SUBCASE("explicit mask zeroes everything outside it") {
    ProfileSpec spec = fixture::minimal_spec();
    spec.mappings["jawOpen"].anchors[0].pose[3] = 0.2;
    spec.mappings["jawOpen"].mask = std::vector<std::size_t>{17};
    const auto delta = compile_profile(spec).maps()[0].anchors()[0].delta;
    CHECK(delta[3] == 0.0);
    CHECK(delta[17] == doctest::Approx(0.4));
    spec.mappings["jawOpen"].mask = std::vector<std::size_t>{17, 17};
    CHECK_THROWS_AS(compile_profile(spec), ValidationError);
    spec.mappings["jawOpen"].mask = std::vector<std::size_t>{32};
    CHECK_THROWS_AS(compile_profile(spec), ValidationError);
  }
  SUBCASE("default mask ignores sub-threshold wobble") {
    ProfileSpec spec = fixture::minimal_spec();
    spec.mappings["jawOpen"].anchors[0].pose[4] = 0.5 + 5e-5;
    CHECK(compile_profile(spec).maps()[0].mask() == std::vector<std::size_t>{17});
  }
  SUBCASE("missing anchors") {
    ProfileSpec spec = fixture::minimal_spec();
    spec.mappings["jawOpen"].anchors.clear();
    CHECK_THROWS_AS(compile_profile(spec), ValidationError);
    CHECK_NOTHROW(compile_profile(spec, false));
  }
}

TEST_CASE("parser reports paths") {
  CHECK_THROWS_WITH_AS(parse_profile_spec("robot: {dof: 2}"), doctest::Contains("rest_pose"), ParseError);
  CHECK_THROWS_WITH_AS(parse_profile_spec("robot: {dof: 1, rest_pose: [0.5], colour: red}"),
                       doctest::Contains("colour"), ParseError);
  CHECK_THROWS_WITH_AS(parse_profile_spec("robot: {dof: 1, rest_pose: ['0.5']}"),
                       doctest::Contains("/robot/rest_pose/0"), ParseError);
  CHECK_THROWS_AS(parse_profile_spec("robot: [unclosed"), ParseError);
  CHECK_THROWS_AS(parse_profile_spec("{\"robot\": "), ParseError);
}

TEST_CASE("JSON and YAML documents are interchangeable") {
  const ProfileSpec from_yaml = parse_profile_spec(minimal_yaml_with(""));
  const ProfileSpec from_json = parse_profile_spec(dump_profile(from_yaml));
  CHECK(from_json == from_yaml);
}

TEST_CASE("load, serialize, load preserves the maps") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto first = compile_profile(oracle::random_spec(rng, 16));
    const auto second = load_profile(serialize_profile(first));
    REQUIRE(first.maps().size() == second.maps().size());
    CHECK(first.rest_pose() == second.rest_pose());
    for (std::size_t i = 0; i < first.maps().size(); ++i) {
      const auto& a = first.maps()[i];
      const auto& b = second.maps()[i];
      CHECK(a.semantic() == b.semantic());
      CHECK(a.mask() == b.mask());
      CHECK(first.inputs_of(i) == second.inputs_of(i));
      REQUIRE(a.anchors().size() == b.anchors().size());
      for (std::size_t k = 0; k < a.anchors().size(); ++k) {
        CHECK(a.anchors()[k].intensity == b.anchors()[k].intensity);
        for (std::size_t m = 0; m < a.dof(); ++m) {
          CHECK(std::abs(a.anchors()[k].delta[m] - b.anchors()[k].delta[m]) < 1e-9);
        }
      }
    }
  }
}

TEST_CASE("shipped default profile") {
  const auto profile = load_profile_file(std::filesystem::path(ANIMAFACE_SOURCE_DIR) / "profiles/default_32dof.yaml");
  CHECK(profile.dof() == 32);
  REQUIRE(profile.neck().has_value());
  CHECK(profile.neck()->yaw.motor == 29);
  CHECK(profile.find_map("jawOpen") != nullptr);
  CHECK(profile.find_map("noseSneer") != nullptr);
  CHECK(profile.find_map("cheekPuff") == nullptr);
}

TEST_CASE("file errors carry the path") {
  fixture::TempDir dir("profile");
  write_text_file(dir / "bad.yaml", "robot: {dof: 0, rest_pose: []}\n");
  CHECK_THROWS_WITH_AS(load_profile_file(dir / "bad.yaml"), doctest::Contains("bad.yaml"), Error);
}
