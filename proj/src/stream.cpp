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

#include "animaface/stream.hpp"

#include <netdb.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cmath>
#include <cstring>
#include <exception>
#include <fstream>
#include <thread>

namespace animaface {

struct FileSink::Impl {
  std::ofstream out;
  std::filesystem::path path;
};

FileSink::FileSink(const std::filesystem::path& path) : impl_(std::make_unique<Impl>()) {
  impl_->path = path;
  impl_->out.open(path, std::ios::binary | std::ios::trunc);
  if (!impl_->out) throw Error("cannot open frame file '" + path.string() + "'");
}

FileSink::~FileSink() = default;

void FileSink::send(std::span<const std::uint8_t> datagram) {
  impl_->out.write(reinterpret_cast<const char*>(datagram.data()), static_cast<std::streamsize>(datagram.size()));
  impl_->out.flush();
  if (!impl_->out) throw Error("write failed for '" + impl_->path.string() + "'");
}

UdpSink::UdpSink(const std::string& host, std::uint16_t port) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_DGRAM;
  addrinfo* res = nullptr;
  const std::string service = std::to_string(port);
  if (int rc = ::getaddrinfo(host.c_str(), service.c_str(), &hints, &res); rc != 0) {
    throw Error("cannot resolve '" + host + "': " + ::gai_strerror(rc));
  }
  std::string last_error = "no addresses";
  for (addrinfo* ai = res; ai; ai = ai->ai_next) {
    const int fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) {
      last_error = std::strerror(errno);
      continue;
    }
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) {
      fd_ = fd;
      break;
    }
    last_error = std::strerror(errno);
    ::close(fd);
  }
  ::freeaddrinfo(res);
  if (fd_ < 0) throw Error("cannot reach " + host + ":" + service + ": " + last_error);
}

UdpSink::~UdpSink() {
  if (fd_ >= 0) ::close(fd_);
}

void UdpSink::send(std::span<const std::uint8_t> datagram) {
  const ssize_t n = ::send(fd_, datagram.data(), datagram.size(), 0);
  if (n < 0) throw Error(std::string("datagram send failed: ") + std::strerror(errno));
}

std::unique_ptr<UdpSink> make_udp_sink(const std::string& endpoint) {
  const auto colon = endpoint.rfind(':');
  if (colon == std::string::npos || colon == 0) throw Error("endpoint must be host:port, got '" + endpoint + "'");
  std::string host = endpoint.substr(0, colon);
  if (host.size() > 2 && host.front() == '[' && host.back() == ']') host = host.substr(1, host.size() - 2);
  int port = 0;
  try {
    port = std::stoi(endpoint.substr(colon + 1));
  } catch (const std::exception&) {
    throw Error("bad port in '" + endpoint + "'");
  }
  if (port <= 0 || port > 65535) throw Error("bad port in '" + endpoint + "'");
  return std::make_unique<UdpSink>(host, static_cast<std::uint16_t>(port));
}

double StreamReport::mean_abs_jitter_ms() const {
  if (frames.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& f : frames) sum += std::abs(f.jitter_ms());
  return sum / static_cast<double>(frames.size());
}

double StreamReport::max_abs_jitter_ms() const {
  double m = 0.0;
  for (const auto& f : frames) m = std::max(m, std::abs(f.jitter_ms()));
  return m;
}

std::vector<MotorFrame> to_motor_frames(std::span<const ActuatorVector> seq) {
  std::vector<MotorFrame> out;
  out.reserve(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) out.push_back({static_cast<std::uint32_t>(i), seq[i]});
  return out;
}

StreamReport stream_sequence(std::span<const MotorFrame> seq, double fps, FrameSink& sink) {
  if (!(fps > 0.0) || !std::isfinite(fps)) throw ValidationError("fps must be positive");
  StreamReport report;
  if (seq.empty()) return report;

  std::vector<std::vector<std::uint8_t>> encoded;
  encoded.reserve(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i > 0 && seq[i].frame_index <= seq[i - 1].frame_index) {
      throw ValidationError("frame indices must strictly increase (position " + std::to_string(i) + ")");
    }
    encoded.push_back(encode_motor_frame(seq[i]));
  }

  using Clock = std::chrono::steady_clock;
  const auto period = std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(1.0 / fps));
  const bool paced = sink.paced();
  report.frames.resize(seq.size());
  std::exception_ptr failure;

  std::thread timer([&] {
    const auto ms_since = [](Clock::time_point a, Clock::time_point b) {
      return std::chrono::duration<double, std::milli>(b - a).count();
    };
    const auto start = Clock::now();
    try {
      for (std::size_t i = 0; i < encoded.size(); ++i) {
        const auto due = start + period * static_cast<long long>(i);
        if (paced) std::this_thread::sleep_until(due);
        const auto now = Clock::now();
        sink.send(encoded[i]);
        report.frames[i] = {seq[i].frame_index, paced ? ms_since(start, due) : ms_since(start, now),
                            ms_since(start, now)};
      }
      // The last frame holds for one full period.
      if (paced) std::this_thread::sleep_until(start + period * static_cast<long long>(encoded.size()));
    } catch (...) {
      failure = std::current_exception();
    }
    report.duration_ms = ms_since(start, Clock::now());
  });
  timer.join();
  if (failure) std::rethrow_exception(failure);
  return report;
}

}  // namespace animaface
