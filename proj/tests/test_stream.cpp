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

#include "animaface/csv_io.hpp"
#include "animaface/stream.hpp"
#include "animaface/wire.hpp"
#include "test_support.hpp"
#include "udp_receiver.hpp"

using namespace animaface;

namespace {

std::vector<MotorFrame> ramp(std::size_t n, std::size_t dof) {
  std::vector<ActuatorVector> seq;
  for (std::size_t t = 0; t < n; ++t) seq.push_back(ActuatorVector(std::vector<double>(dof, double(t) / double(n))));
  return to_motor_frames(seq);
}

class CountingSink : public FrameSink {
 public:
  void send(std::span<const std::uint8_t>) override { ++count; }
  bool paced() const override { return false; }
  std::size_t count = 0;
};

}  // namespace

TEST_CASE("file sink is unpaced and holds every frame") {
  fixture::TempDir dir("stream");
  const auto frames = ramp(25, 32);
  StreamReport report;
  {
    FileSink sink(dir / "out.bin");
    report = stream_sequence(frames, 25.0, sink);
  }
  CHECK(report.frames.size() == 25);
  CHECK(report.duration_ms < 200.0);

  const std::string raw = read_text_file(dir / "out.bin");
  CHECK(raw.size() == 25 * encoded_size(32));
  const std::vector<std::uint8_t> bytes(raw.begin(), raw.end());
  const auto back = decode_motor_stream(bytes);
  REQUIRE(back.size() == 25);
  for (std::uint32_t i = 0; i < 25; ++i) CHECK(back[i].frame_index == i);
}

TEST_CASE("empty sequence emits nothing") {
  CountingSink sink;
  const auto report = stream_sequence(std::vector<MotorFrame>{}, 25.0, sink);
  CHECK(report.frames.empty());
  CHECK(report.duration_ms == 0.0);
  CHECK(sink.count == 0);
}

TEST_CASE("argument checks") {
  CountingSink sink;
  CHECK_THROWS_AS(stream_sequence(ramp(3, 2), 0.0, sink), ValidationError);
  auto frames = ramp(3, 2);
  frames[2].frame_index = 1;
  CHECK_THROWS_AS(stream_sequence(frames, 25.0, sink), ValidationError);
  CHECK(sink.count == 0);
  CHECK_THROWS_AS(make_udp_sink("nohostport"), Error);
  CHECK_THROWS_AS(make_udp_sink("127.0.0.1:99999"), Error);
}

TEST_CASE("datagrams arrive paced") {
  fixture::UdpReceiver rx;
  auto sink = make_udp_sink("127.0.0.1:" + std::to_string(rx.port()));
  const auto report = stream_sequence(ramp(10, 32), 50.0, *sink);
  REQUIRE(rx.wait_for(10, std::chrono::seconds(2)));
  const auto got = rx.received();
  CHECK(got.size() == 10);
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(decode_motor_frame(got[i].bytes).frame_index == i);
  // Ten slots of 20 ms.
  CHECK(report.duration_ms >= 199.0);
  CHECK(report.duration_ms < 400.0);
  const double spread = std::chrono::duration<double, std::milli>(got.back().arrival - got.front().arrival).count();
  CHECK(spread > 150.0);
}
