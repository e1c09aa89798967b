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

#include "animaface/calibration_server.hpp"

#include <chrono>
#include <functional>

#include "httplib.h"

namespace animaface {

namespace {

using nlohmann::json;

constexpr const char* kFallbackPage = R"html(<!doctype html>
<html><head><meta charset="utf-8"><title>Anchor calibration</title></head>
<body>
<h1>Anchor calibration service</h1>
<p>No UI bundle was configured. Start with <code>--ui-dir</code> to serve one, or use the JSON API
under <code>/api/</code> (state, actuator, select, anchor, preview, export, events).</p>
</body></html>
)html";

void reply_json(httplib::Response& res, const json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

// Wraps a handler so library and JSON errors become 400 responses.
httplib::Server::Handler guarded(std::function<json(const httplib::Request&)> body) {
  return [body = std::move(body)](const httplib::Request& req, httplib::Response& res) {
    try {
      reply_json(res, body(req));
    } catch (const Error& e) {
      reply_json(res, {{"error", e.what()}}, 400);
    } catch (const json::exception& e) {
      reply_json(res, {{"error", std::string("bad request body: ") + e.what()}}, 400);
    }
  };
}

json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  return json::parse(req.body);
}

double number_field(const json& body, const char* key) {
  if (!body.contains(key) || !body[key].is_number()) {
    throw ValidationError(std::string("request needs numeric '") + key + "'");
  }
  return body[key].get<double>();
}

}  // namespace

CalibrationServer::CalibrationServer(CalibrationSession& session, std::optional<std::filesystem::path> ui_dir)
    : session_(session), server_(std::make_unique<httplib::Server>()) {
  {
    const CalibrationSnapshot s = session_.snapshot();
    latest_event_ = s.to_json().dump();
    latest_version_ = s.version;
  }
  subscription_ = session_.subscribe([this](const CalibrationSnapshot& s) {
    {
      std::lock_guard lock(events_mutex_);
      latest_event_ = s.to_json().dump();
      latest_version_ = s.version;
    }
    events_cv_.notify_all();
  });

  install_routes();
  if (ui_dir) {
    if (!server_->set_mount_point("/", ui_dir->string())) {
      throw Error("UI directory '" + ui_dir->string() + "' does not exist");
    }
  } else {
    server_->Get("/", [](const httplib::Request&, httplib::Response& res) { res.set_content(kFallbackPage, "text/html"); });
  }
}

CalibrationServer::~CalibrationServer() {
  stop();
  session_.unsubscribe(subscription_);
}

void CalibrationServer::install_routes() {
  server_->Get("/api/state", guarded([this](const httplib::Request&) { return session_.snapshot().to_json(); }));

  server_->Post("/api/actuator", guarded([this](const httplib::Request& req) {
    const json body = parse_body(req);
    const double index = number_field(body, "index");
    if (index < 0 || index != static_cast<double>(static_cast<long long>(index))) {
      throw ValidationError("actuator index must be a non-negative integer");
    }
    return session_.set_actuator(static_cast<std::size_t>(index), number_field(body, "value")).to_json();
  }));

  server_->Post("/api/select", guarded([this](const httplib::Request& req) {
    const json body = parse_body(req);
    if (!body.contains("semantic") || !body["semantic"].is_string()) {
      throw ValidationError("request needs string 'semantic'");
    }
    return session_.select(body["semantic"].get<std::string>(), number_field(body, "intensity")).to_json();
  }));

  server_->Post("/api/anchor", guarded([this](const httplib::Request&) { return session_.save_anchor().to_json(); }));

  server_->Post("/api/anchor/delete", guarded([this](const httplib::Request& req) {
    return session_.delete_anchor(number_field(parse_body(req), "intensity")).to_json();
  }));

  server_->Post("/api/preview", guarded([this](const httplib::Request& req) {
    const json body = parse_body(req);
    std::map<std::string, double> intensities;
    if (body.contains("intensities")) {
      if (!body["intensities"].is_object()) throw ValidationError("'intensities' must be an object");
      for (const auto& [name, value] : body["intensities"].items()) {
        if (!value.is_number()) throw ValidationError("intensity for '" + name + "' must be a number");
        intensities[name] = value.get<double>();
      }
    }
    return json{{"actuators", session_.preview(intensities).values()}};
  }));

  server_->Get("/api/export", [this](const httplib::Request&, httplib::Response& res) {
    try {
      res.set_content(session_.export_profile(), "application/json");
    } catch (const Error& e) {
      reply_json(res, {{"error", e.what()}}, 400);
    }
  });

  server_->Get("/api/events", [this](const httplib::Request&, httplib::Response& res) {
    res.set_header("Cache-Control", "no-cache");
    auto sent = std::make_shared<std::optional<std::uint64_t>>();
    res.set_chunked_content_provider("text/event-stream", [this, sent](std::size_t, httplib::DataSink& sink) {
      std::unique_lock lock(events_mutex_);
      if (*sent) {
        events_cv_.wait_for(lock, std::chrono::seconds(5),
                            [&] { return stopping_ || latest_version_ != **sent; });
      }
      if (stopping_) {
        lock.unlock();
        sink.done();
        return false;
      }
      std::string chunk;
      if (!*sent || latest_version_ != **sent) {
        chunk = "data: " + latest_event_ + "\n\n";
        *sent = latest_version_;
      } else {
        chunk = ": keep-alive\n\n";
      }
      lock.unlock();
      return sink.write(chunk.data(), chunk.size());
    });
  });
}

int CalibrationServer::bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = server_->bind_to_any_port(host);
    if (bound < 0) throw Error("cannot bind " + host);
    return bound;
  }
  if (!server_->bind_to_port(host, port)) throw Error("cannot bind " + host + ":" + std::to_string(port));
  return port;
}

void CalibrationServer::serve() { server_->listen_after_bind(); }

void CalibrationServer::stop() {
  {
    std::lock_guard lock(events_mutex_);
    stopping_ = true;
  }
  events_cv_.notify_all();
  server_->stop();
}

}  // namespace animaface
