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

#include <condition_variable>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "animaface/calibration.hpp"

namespace httplib {
class Server;
}

namespace animaface {

/// HTTP front end for a CalibrationSession.
///
///   GET  /api/state              snapshot
///   POST /api/actuator           {index, value}
///   POST /api/select             {semantic, intensity}
///   POST /api/anchor             save the live pose at the selection
///   POST /api/anchor/delete      {intensity}
///   POST /api/preview            {intensities: {channel: beta}} -> {actuators}
///   GET  /api/export             profile document
///   GET  /api/events             server-sent events, one snapshot per change
///
/// Mutating endpoints reply with the new snapshot. Errors are 400 with
/// {"error": message}. Static UI assets are served from `ui_dir` when given.
class CalibrationServer {
 public:
  CalibrationServer(CalibrationSession& session, std::optional<std::filesystem::path> ui_dir = std::nullopt);
  ~CalibrationServer();
  CalibrationServer(const CalibrationServer&) = delete;
  CalibrationServer& operator=(const CalibrationServer&) = delete;

  /// Binds; port 0 picks a free port. Returns the bound port.
  int bind(const std::string& host, int port);
  /// Blocks serving requests until stop().
  void serve();
  void stop();

 private:
  void install_routes();

  CalibrationSession& session_;
  std::unique_ptr<httplib::Server> server_;
  std::size_t subscription_ = 0;

  std::mutex events_mutex_;
  std::condition_variable events_cv_;
  std::string latest_event_;
  std::uint64_t latest_version_ = 0;
  bool stopping_ = false;
};

}  // namespace animaface
