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

#include "animaface/wire.hpp"

#include <algorithm>
#include <cmath>

namespace animaface {

std::uint16_t quantize(double value) {
  const double scaled = std::floor(std::clamp(value, 0.0, 1.0) * 65535.0);
  return static_cast<std::uint16_t>(scaled);
}

double dequantize(std::uint16_t code) { return static_cast<double>(code) / 65535.0; }

std::vector<std::uint8_t> encode_motor_frame(const MotorFrame& frame) {
  const std::size_t d = frame.values.size();
  if (d > kWireMaxCount) {
    throw ValidationError("motor frame has " + std::to_string(d) + " values; the wire format carries at most 255");
  }
  std::vector<std::uint8_t> out;
  out.reserve(encoded_size(d));
  for (std::uint8_t b : kWireMagic) out.push_back(b);
  out.push_back(kWireVersion);
  const std::uint32_t idx = frame.frame_index;
  out.push_back(static_cast<std::uint8_t>(idx >> 24));
  out.push_back(static_cast<std::uint8_t>(idx >> 16));
  out.push_back(static_cast<std::uint8_t>(idx >> 8));
  out.push_back(static_cast<std::uint8_t>(idx));
  out.push_back(static_cast<std::uint8_t>(d));
  for (double v : frame.values.values()) {
    const std::uint16_t q = quantize(v);
    out.push_back(static_cast<std::uint8_t>(q >> 8));
    out.push_back(static_cast<std::uint8_t>(q));
  }
  return out;
}

MotorFrame decode_motor_frame(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kWireHeaderSize) throw ParseError("motor frame shorter than header");
  if (!std::equal(kWireMagic.begin(), kWireMagic.end(), bytes.begin())) throw ParseError("bad motor frame magic");
  if (bytes[4] != kWireVersion) throw ParseError("unsupported motor frame version " + std::to_string(bytes[4]));
  const std::size_t d = bytes[9];
  if (bytes.size() != encoded_size(d)) {
    throw ParseError("motor frame length " + std::to_string(bytes.size()) + " does not match count " +
                     std::to_string(d));
  }
  MotorFrame frame;
  frame.frame_index = (std::uint32_t{bytes[5]} << 24) | (std::uint32_t{bytes[6]} << 16) |
                      (std::uint32_t{bytes[7]} << 8) | std::uint32_t{bytes[8]};
  std::vector<double> values(d);
  for (std::size_t i = 0; i < d; ++i) {
    const auto hi = bytes[kWireHeaderSize + 2 * i];
    const auto lo = bytes[kWireHeaderSize + 2 * i + 1];
    values[i] = dequantize(static_cast<std::uint16_t>((hi << 8) | lo));
  }
  frame.values = ActuatorVector(std::move(values));
  return frame;
}

std::vector<MotorFrame> decode_motor_stream(std::span<const std::uint8_t> bytes) {
  std::vector<MotorFrame> frames;
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    if (bytes.size() - pos < kWireHeaderSize) throw ParseError("truncated motor frame at byte " + std::to_string(pos));
    const std::size_t len = encoded_size(bytes[pos + 9]);
    if (bytes.size() - pos < len) throw ParseError("truncated motor frame at byte " + std::to_string(pos));
    frames.push_back(decode_motor_frame(bytes.subspan(pos, len)));
    pos += len;
  }
  return frames;
}

}  // namespace animaface
