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

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "animaface/wire.hpp"

namespace animaface {

/// Destination for encoded motor frames.
class FrameSink {
 public:
  virtual ~FrameSink() = default;
  virtual void send(std::span<const std::uint8_t> datagram) = 0;
  /// Paced sinks get one datagram per 1/fps; unpaced sinks get all at once.
  virtual bool paced() const = 0;
};

/// Appends every frame to a file, unpaced.
class FileSink final : public FrameSink {
 public:
  explicit FileSink(const std::filesystem::path& path);
  ~FileSink() override;
  FileSink(const FileSink&) = delete;
  FileSink& operator=(const FileSink&) = delete;

  void send(std::span<const std::uint8_t> datagram) override;
  bool paced() const override { return false; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Connected UDP socket. Throws Error when the host cannot be resolved or
/// the socket cannot be connected.
class UdpSink final : public FrameSink {
 public:
  UdpSink(const std::string& host, std::uint16_t port);
  ~UdpSink() override;
  UdpSink(const UdpSink&) = delete;
  UdpSink& operator=(const UdpSink&) = delete;

  void send(std::span<const std::uint8_t> datagram) override;
  bool paced() const override { return true; }

 private:
  int fd_ = -1;
};

/// "host:port" -> UdpSink.
std::unique_ptr<UdpSink> make_udp_sink(const std::string& endpoint);

struct FrameTiming {
  std::uint32_t frame_index = 0;
  double scheduled_ms = 0.0;  // offset from stream start
  double actual_ms = 0.0;
  double jitter_ms() const { return actual_ms - scheduled_ms; }
};

struct StreamReport {
  std::vector<FrameTiming> frames;
  /// From the first slot to the end of the last slot (frames / fps for a
  /// paced sink).
  double duration_ms = 0.0;

  double mean_abs_jitter_ms() const;
  double max_abs_jitter_ms() const;
};

/// Frames are numbered by position in `seq`.
std::vector<MotorFrame> to_motor_frames(std::span<const ActuatorVector> seq);

/// Encodes every frame up front, then emits them from a dedicated timing
/// thread at 1/fps intervals (or back to back for unpaced sinks). Throws
/// ValidationError for fps <= 0 or non-increasing frame indices, and
/// propagates sink errors.
StreamReport stream_sequence(std::span<const MotorFrame> seq, double fps, FrameSink& sink);

}  // namespace animaface
