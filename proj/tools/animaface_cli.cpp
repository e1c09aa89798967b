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

// Command-line front end: retarget, baselines, EDR, comparison reports,
// motor streaming and the calibration service.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "animaface/baselines.hpp"
#include "animaface/calibration.hpp"
#include "animaface/calibration_server.hpp"
#include "animaface/compare.hpp"
#include "animaface/csv_io.hpp"
#include "animaface/edr.hpp"
#include "animaface/profile.hpp"
#include "animaface/retarget.hpp"
#include "animaface/stream.hpp"

namespace af = animaface;

namespace {

struct GlobalOptions {
  std::string profile;
  std::optional<double> fps;
  double sigma = 1.0;
  std::uint64_t seed = 0;
  double trim_fraction = af::kDefaultTrimFraction;
  bool lenient = false;
};

af::RetargetProfile require_profile(const GlobalOptions& g) {
  if (g.profile.empty()) throw af::Error("no profile: pass --profile or set SINGINGBOT_PROFILE");
  return af::load_profile_file(g.profile);
}

double frame_rate(const GlobalOptions& g, const af::RetargetProfile* profile) {
  if (g.fps) return *g.fps;
  return profile ? profile->fps() : 25.0;
}

std::vector<af::BlendshapeFrame> load_frames(const std::string& path, const GlobalOptions& g, double fps) {
  af::BlendshapeCsvOptions opts;
  opts.mode = g.lenient ? af::ValidationMode::kLenient : af::ValidationMode::kStrict;
  opts.fps = fps;
  auto result = af::parse_blendshape_csv(af::read_text_file(path), opts);
  if (result.report.clamped > 0) {
    std::cerr << "warning: clamped " << result.report.clamped << " out-of-range coefficients in " << path << "\n";
  }
  return std::move(result.frames);
}

af::SmoothingConfig smoothing(const GlobalOptions& g) { return af::SmoothingConfig{g.sigma, std::nullopt}; }

void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    af::write_text_file(path, text);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Blendshape-to-actuator retargeting, baselines and Emotion Dynamic Range tools"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--profile", g.profile, "Retarget profile (YAML or JSON)")->envname("SINGINGBOT_PROFILE");
  app.add_option("--fps", g.fps, "Frame rate (default: profile fps, else 25)")->check(CLI::PositiveNumber);
  app.add_option("--sigma", g.sigma, "Gaussian smoothing sigma in frames (0 disables)")->capture_default_str()->check(CLI::NonNegativeNumber);
  app.add_option("--seed", g.seed, "Seed for the random baseline")->capture_default_str();
  app.add_option("--trim-fraction", g.trim_fraction, "Outlier fraction removed before the EDR hull")->capture_default_str()
      ->check(CLI::Range(0.0, 0.999999));
  auto* strict = app.add_flag("--strict", "Reject out-of-range coefficients (default)");
  app.add_flag("--lenient", g.lenient, "Clamp out-of-range coefficients with a warning")->excludes(strict);

  // retarget
  auto* retarget = app.add_subcommand("retarget", "Map a blendshape CSV to actuator commands");
  std::string rt_in, rt_out;
  retarget->add_option("-i,--input", rt_in, "Blendshape CSV")->required()->check(CLI::ExistingFile);
  retarget->add_option("-o,--output", rt_out, "Motor CSV (default stdout)");

  // baseline rt|nnr
  auto* baseline = app.add_subcommand("baseline", "Run a retrieval baseline over a paired dataset");
  baseline->require_subcommand(1);
  auto* rt = baseline->add_subcommand("rt", "Random sampling from the dataset");
  auto* nnr = baseline->add_subcommand("nnr", "Nearest-neighbour retrieval on blendshapes");
  std::string bl_dataset, bl_in, bl_out;
  std::size_t bl_frames = 0;
  bool nnr_raw = false;
  for (auto* sub : {rt, nnr}) {
    sub->add_option("--dataset", bl_dataset, "Paired dataset CSV")->required()->check(CLI::ExistingFile);
    sub->add_option("-o,--output", bl_out, "Motor CSV (default stdout)");
  }
  auto* rt_input = rt->add_option("-i,--input", bl_in, "Blendshape CSV whose length sets the frame count")
                       ->check(CLI::ExistingFile);
  rt->add_option("--frames", bl_frames, "Frame count")->excludes(rt_input);
  nnr->add_option("-i,--input", bl_in, "Blendshape CSV")->required()->check(CLI::ExistingFile);
  nnr->add_flag("--raw", nnr_raw, "Query with unsmoothed blendshapes");

  // edr
  auto* edr_cmd = app.add_subcommand("edr", "Emotion Dynamic Range of VA trajectory files");
  std::vector<std::string> va_files;
  std::string plot_path;
  edr_cmd->add_option("files", va_files, "VA CSV files (frame,valence,arousal)")->required()->check(CLI::ExistingFile);
  edr_cmd->add_option("--plot", plot_path, "Write the hull plot (SVG)");

  // compare
  auto* compare = app.add_subcommand("compare", "Ours vs RT vs NNR motors plus an EDR table and hull plot");
  std::string cmp_in, cmp_dataset, cmp_out;
  std::vector<std::string> cmp_va;
  bool cmp_nnr_raw = false;
  compare->add_option("-i,--input", cmp_in, "Blendshape CSV")->required()->check(CLI::ExistingFile);
  compare->add_option("--va", cmp_va, "method=path VA trajectory (repeatable)");
  compare->add_option("--dataset", cmp_dataset, "Paired dataset CSV")->required()->check(CLI::ExistingFile);
  compare->add_option("--out-dir", cmp_out, "Output directory")->required();
  compare->add_flag("--nnr-raw", cmp_nnr_raw, "NNR queries with unsmoothed blendshapes");

  // stream
  auto* stream = app.add_subcommand("stream", "Send a motor CSV as wire-protocol frames");
  std::string st_in, st_udp, st_file, st_report;
  stream->add_option("-i,--input", st_in, "Motor CSV")->required()->check(CLI::ExistingFile);
  auto* udp_opt = stream->add_option("--udp", st_udp, "host:port datagram endpoint");
  auto* file_opt = stream->add_option("--file", st_file, "Write concatenated frames to a file")->excludes(udp_opt);
  udp_opt->excludes(file_opt);
  stream->add_option("--report", st_report, "Per-frame timing CSV");

  // calibrate
  auto* calibrate = app.add_subcommand("calibrate", "Serve the anchor calibration API and UI");
  std::string host = "127.0.0.1", ui_dir;
  int port = 8080;
  std::size_t blank_dof = 32;
  calibrate->add_option("--host", host, "Bind address")->capture_default_str();
  calibrate->add_option("--port", port, "Port (0 picks a free one)")->capture_default_str();
  calibrate->add_option("--ui-dir", ui_dir, "Static UI bundle directory")->check(CLI::ExistingDirectory);
  calibrate->add_option("--dof", blank_dof, "Actuator count for a blank draft when no profile is given")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*retarget) {
      const auto profile = require_profile(g);
      const auto frames = load_frames(rt_in, g, frame_rate(g, &profile));
      write_or_print(rt_out, af::write_motor_csv(af::retarget_sequence(profile, frames, smoothing(g))));
    } else if (*baseline) {
      const auto ds = af::parse_dataset_csv(af::read_text_file(bl_dataset));
      std::vector<af::ActuatorVector> out;
      if (*rt) {
        std::size_t n = bl_frames;
        if (!bl_in.empty()) n = load_frames(bl_in, g, frame_rate(g, nullptr)).size();
        if (n == 0) throw af::Error("baseline rt needs --frames or --input");
        out = af::random_baseline(ds, n, g.seed);
      } else {
        const auto frames = load_frames(bl_in, g, frame_rate(g, nullptr));
        out = nnr_raw ? af::nnr_baseline(ds, frames) : af::nnr_baseline(ds, af::smooth_sequence(frames, smoothing(g)));
      }
      write_or_print(bl_out, af::write_motor_csv(out));
    } else if (*edr_cmd) {
      std::vector<af::NamedTrajectory> trajs;
      for (const auto& f : va_files) {
        trajs.push_back({std::filesystem::path(f).stem().string(), af::parse_va_csv(af::read_text_file(f))});
      }
      for (const auto& t : trajs) {
        std::printf("%s\t%.6f\n", t.name.c_str(), af::edr(t.trajectory, g.trim_fraction));
      }
      if (!plot_path.empty()) af::write_text_file(plot_path, af::emit_hull_geometry(trajs, g.trim_fraction));
    } else if (*compare) {
      af::CompareInputs in;
      in.blendshapes = cmp_in;
      in.dataset = cmp_dataset;
      in.output_dir = cmp_out;
      if (g.profile.empty()) throw af::Error("no profile: pass --profile or set SINGINGBOT_PROFILE");
      in.profile = g.profile;
      for (const auto& spec : cmp_va) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos || eq == 0) throw af::Error("--va expects method=path, got '" + spec + "'");
        in.va_files.emplace_back(spec.substr(0, eq), spec.substr(eq + 1));
      }
      af::CompareOptions opts;
      opts.smoothing = smoothing(g);
      opts.seed = g.seed;
      opts.trim_fraction = g.trim_fraction;
      opts.nnr_smoothed = !cmp_nnr_raw;
      opts.mode = g.lenient ? af::ValidationMode::kLenient : af::ValidationMode::kStrict;
      const auto report = af::run_compare(in, opts);
      std::cout << af::read_text_file(report.table);
      std::cout << "wrote " << report.motors_ours.string() << ", " << report.motors_rt.string() << ", "
                << report.motors_nnr.string() << "\n";
    } else if (*stream) {
      std::optional<af::RetargetProfile> profile;
      if (!g.profile.empty()) profile = af::load_profile_file(g.profile);
      const double fps = frame_rate(g, profile ? &*profile : nullptr);
      const auto frames = af::to_motor_frames(af::parse_motor_csv(af::read_text_file(st_in)));
      std::unique_ptr<af::FrameSink> sink;
      if (!st_udp.empty()) {
        sink = af::make_udp_sink(st_udp);
      } else if (!st_file.empty()) {
        sink = std::make_unique<af::FileSink>(st_file);
      } else {
        throw af::Error("stream needs --udp host:port or --file path");
      }
      const auto report = af::stream_sequence(frames, fps, *sink);
      std::printf("frames=%zu duration_ms=%.3f mean_abs_jitter_ms=%.3f max_abs_jitter_ms=%.3f\n",
                  report.frames.size(), report.duration_ms, report.mean_abs_jitter_ms(), report.max_abs_jitter_ms());
      if (!st_report.empty()) {
        std::string csv = "frame,scheduled_ms,actual_ms,jitter_ms\n";
        for (const auto& f : report.frames) {
          char buf[128];
          std::snprintf(buf, sizeof buf, "%u,%.3f,%.3f,%.3f\n", f.frame_index, f.scheduled_ms, f.actual_ms, f.jitter_ms());
          csv += buf;
        }
        af::write_text_file(st_report, csv);
      }
    } else if (*calibrate) {
      af::ProfileSpec draft = g.profile.empty() ? af::CalibrationSession::blank_draft(blank_dof)
                                                : af::parse_profile_spec(af::read_text_file(g.profile));
      af::CalibrationSession session(std::move(draft));
      std::optional<std::filesystem::path> ui;
      if (!ui_dir.empty()) ui = ui_dir;
      af::CalibrationServer server(session, ui);
      const int bound = server.bind(host, port);
      std::cout << "calibration service on http://" << host << ":" << bound << "/" << std::endl;
      server.serve();
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
