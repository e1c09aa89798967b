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

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "animaface/core_types.hpp"

namespace animaface {

/// One stream datagram: frame counter plus the full actuator vector.
struct MotorFrame {
  std::uint32_t frame_index = 0;
  ActuatorVector values;

  friend bool operator==(const MotorFrame&, const MotorFrame&) = default;
};

// Layout, big-endian:
//   "SBOT" | version u8 | frame_index u32 | count u8 | count x u16
// with each u16 = floor(value * 65535).
inline constexpr std::array<std::uint8_t, 4> kWireMagic = {'S', 'B', 'O', 'T'};
inline constexpr std::uint8_t kWireVersion = 0x01;
inline constexpr std::size_t kWireHeaderSize = 10;
inline constexpr std::size_t kWireMaxCount = 255;

inline constexpr std::size_t encoded_size(std::size_t count) { return kWireHeaderSize + 2 * count; }

std::uint16_t quantize(double value);
double dequantize(std::uint16_t code);

/// Throws ValidationError when the frame has more than 255 values.
std::vector<std::uint8_t> encode_motor_frame(const MotorFrame& frame);

/// Inverse of encode_motor_frame up to quantization (|error| <= 1/65535).
/// Throws ParseError on a bad magic, version, or length.
MotorFrame decode_motor_frame(std::span<const std::uint8_t> bytes);

/// Splits a concatenation of encoded frames (a file sink's output).
std::vector<MotorFrame> decode_motor_stream(std::span<const std::uint8_t> bytes);

}  // namespace animaface
