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

#include "animaface/compare.hpp"

#include <cstdio>
#include <functional>

#include "animaface/baselines.hpp"
#include "animaface/csv_io.hpp"
#include "animaface/profile.hpp"
#include "animaface/retarget.hpp"
#include "json.hpp"

namespace animaface {

namespace {

// Runs `load`, recording any library error under `label` instead of throwing.
template <typename T>
std::optional<T> collect(std::vector<std::string>& errors, const std::string& label, const std::function<T()>& load) {
  try {
    return load();
  } catch (const Error& e) {
    errors.push_back(label + ": " + e.what());
    return std::nullopt;
  }
}

}  // namespace

CompareReport run_compare(const CompareInputs& in, const CompareOptions& opts) {
  std::vector<std::string> errors;

  auto profile = collect<RetargetProfile>(errors, in.profile.string(), [&] { return load_profile_file(in.profile); });
  const double fps = profile ? static_cast<double>(profile->fps()) : 25.0;
  auto frames = collect<std::vector<BlendshapeFrame>>(errors, in.blendshapes.string(), [&] {
    return parse_blendshape_csv(read_text_file(in.blendshapes), {opts.mode, fps}).frames;
  });
  auto dataset = collect<PairedDataset>(errors, in.dataset.string(),
                                        [&] { return parse_dataset_csv(read_text_file(in.dataset)); });
  std::vector<NamedTrajectory> trajs;
  for (const auto& [method, path] : in.va_files) {
    auto traj = collect<VaTrajectory>(errors, path.string(), [&] { return parse_va_csv(read_text_file(path)); });
    if (traj) trajs.push_back({method, std::move(*traj)});
  }
  if (frames && frames->empty()) errors.push_back(in.blendshapes.string() + ": no frames");
  if (profile && dataset && profile->dof() != dataset->dof()) {
    errors.push_back(in.dataset.string() + ": dataset has " + std::to_string(dataset->dof()) +
                     " actuators, profile has " + std::to_string(profile->dof()));
  }
  if (!errors.empty()) {
    std::string msg = "compare inputs failed to load:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw ParseError(msg);
  }

  std::filesystem::create_directories(in.output_dir);
  CompareReport report;
  report.frames = frames->size();

  const std::vector<BlendshapeFrame> smoothed = smooth_sequence(*frames, opts.smoothing);
  std::vector<ActuatorVector> ours;
  ours.reserve(smoothed.size());
  for (const auto& f : smoothed) ours.push_back(retarget_frame(*profile, f));
  const auto rt = random_baseline(*dataset, frames->size(), opts.seed);
  const auto nnr = nnr_baseline(*dataset, opts.nnr_smoothed ? std::span<const BlendshapeFrame>(smoothed)
                                                             : std::span<const BlendshapeFrame>(*frames));

  report.motors_ours = in.output_dir / "motors_ours.csv";
  report.motors_rt = in.output_dir / "motors_rt.csv";
  report.motors_nnr = in.output_dir / "motors_nnr.csv";
  write_text_file(report.motors_ours, write_motor_csv(ours));
  write_text_file(report.motors_rt, write_motor_csv(rt));
  write_text_file(report.motors_nnr, write_motor_csv(nnr));

  for (const auto& t : trajs) report.methods.push_back({t.name, edr(t.trajectory, opts.trim_fraction), t.trajectory.size()});

  std::string table = "| Method | EDR | VA frames |\n|---|---:|---:|\n";
  nlohmann::json doc;
  doc["frames"] = report.frames;
  doc["trim_fraction"] = opts.trim_fraction;
  doc["seed"] = opts.seed;
  doc["sigma"] = opts.smoothing.sigma;
  doc["motors"] = {{"ours", report.motors_ours.filename().string()},
                   {"rt", report.motors_rt.filename().string()},
                   {"nnr", report.motors_nnr.filename().string()}};
  doc["edr"] = nlohmann::json::array();
  for (const auto& m : report.methods) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", m.edr);
    table += "| " + m.method + " | " + buf + " | " + std::to_string(m.va_frames) + " |\n";
    doc["edr"].push_back({{"method", m.method}, {"edr", m.edr}, {"va_frames", m.va_frames}});
  }
  report.table = in.output_dir / "edr_table.md";
  report.json = in.output_dir / "report.json";
  write_text_file(report.table, table);
  write_text_file(report.json, doc.dump(2) + "\n");
  if (!trajs.empty()) {
    report.plot = in.output_dir / "edr_hulls.svg";
    write_text_file(report.plot, emit_hull_geometry(trajs, opts.trim_fraction));
  }
  return report;
}

}  // namespace animaface
