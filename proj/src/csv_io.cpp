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

#include "animaface/csv_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

namespace animaface {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

// Header-indexed table; rows keep their 1-based line numbers for messages.
struct CsvTable {
  std::vector<std::string> header;
  std::map<std::string, std::size_t, std::less<>> column;
  std::vector<std::vector<std::string_view>> rows;
  std::vector<std::size_t> lines;

  std::optional<std::size_t> find(std::string_view name) const {
    auto it = column.find(name);
    if (it == column.end()) return std::nullopt;
    return it->second;
  }

  std::size_t require(std::string_view name) const {
    if (auto c = find(name)) return *c;
    throw ParseError("missing column '" + std::string(name) + "'");
  }

  double number(std::size_t row, std::size_t col) const {
    const std::string_view cell = rows[row][col];
    double v = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    if (first != last && *first == '+') ++first;
    auto [p, ec] = std::from_chars(first, last, v);
    if (cell.empty() || ec != std::errc() || p != last || !std::isfinite(v)) {
      throw ParseError("line " + std::to_string(lines[row]) + " column '" + header[col] + "': malformed number '" +
                       std::string(cell) + "'");
    }
    return v;
  }
};

CsvTable parse_table(std::string_view text) {
  CsvTable t;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  bool have_header = false;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++line_no;
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    if (trim(line).empty()) continue;

    auto cells = split(line);
    if (!have_header) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        std::string name(cells[i]);
        if (name.empty()) throw ParseError("empty column name at position " + std::to_string(i));
        if (!t.column.emplace(name, i).second) throw ParseError("duplicate column '" + name + "'");
        t.header.push_back(std::move(name));
      }
      have_header = true;
      continue;
    }
    if (cells.size() != t.header.size()) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(t.header.size()) +
                       " fields, got " + std::to_string(cells.size()));
    }
    t.rows.push_back(std::move(cells));
    t.lines.push_back(line_no);
  }
  if (!have_header) throw ParseError("missing header row");
  return t;
}

std::string format_number(double v) {
  std::array<char, 32> buf{};
  auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), p);
}

std::string motor_column(std::size_t i) {
  std::string s = std::to_string(i);
  if (s.size() < 2) s.insert(0, 2 - s.size(), '0');
  return "motor_" + s;
}

// Columns motor_00.. must form a contiguous range starting at 0.
std::vector<std::size_t> motor_columns(const CsvTable& t) {
  std::map<std::size_t, std::size_t> by_index;
  for (std::size_t c = 0; c < t.header.size(); ++c) {
    const std::string& h = t.header[c];
    if (h.rfind("motor_", 0) != 0) continue;
    std::size_t idx = 0;
    const char* first = h.data() + 6;
    const char* last = h.data() + h.size();
    auto [p, ec] = std::from_chars(first, last, idx);
    if (ec != std::errc() || p != last || first == last) throw ParseError("bad motor column '" + h + "'");
    if (!by_index.emplace(idx, c).second) throw ParseError("duplicate motor index in '" + h + "'");
  }
  std::vector<std::size_t> cols;
  for (const auto& [idx, col] : by_index) {
    if (idx != cols.size()) throw ParseError("motor columns must be contiguous from motor_00; missing " + motor_column(cols.size()));
    cols.push_back(col);
  }
  if (cols.empty()) throw ParseError("no motor_NN columns");
  return cols;
}

void reject_unknown_columns(const CsvTable& t, const std::function<bool(const std::string&)>& known) {
  for (const std::string& h : t.header) {
    if (!known(h)) throw ParseError("unexpected column '" + h + "'");
  }
}

std::array<std::size_t, kChannelCount> channel_columns(const CsvTable& t) {
  std::array<std::size_t, kChannelCount> cols{};
  for (std::size_t c = 0; c < kChannelCount; ++c) cols[c] = t.require(kArkitChannels[c]);
  return cols;
}

bool is_motor_column(const std::string& h) { return h.rfind("motor_", 0) == 0; }

}  // namespace

BlendshapeCsvResult parse_blendshape_csv(std::string_view text, const BlendshapeCsvOptions& opts) {
  const CsvTable t = parse_table(text);
  const auto cols = channel_columns(t);
  reject_unknown_columns(t, [](const std::string& h) {
    return find_channel(h) || h == "frame" || h == "timestamp_ms" || h == "yaw" || h == "pitch" || h == "roll";
  });

  const auto ts_col = t.find("timestamp_ms");
  const auto frame_col = t.find("frame");
  const auto yaw = t.find("yaw"), pitch = t.find("pitch"), roll = t.find("roll");
  const int pose_cols = (yaw ? 1 : 0) + (pitch ? 1 : 0) + (roll ? 1 : 0);
  if (pose_cols != 0 && pose_cols != 3) throw ParseError("head pose needs all of yaw, pitch, roll columns");
  if (!(opts.fps > 0.0)) throw ValidationError("fps must be positive");

  BlendshapeCsvResult result;
  result.frames.reserve(t.rows.size());
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    Coefficients coeffs{};
    for (std::size_t c = 0; c < kChannelCount; ++c) coeffs[c] = t.number(r, cols[c]);

    double ts = 0.0;
    if (ts_col) {
      ts = t.number(r, *ts_col);
    } else if (frame_col) {
      ts = t.number(r, *frame_col) * 1000.0 / opts.fps;
    } else {
      ts = static_cast<double>(r) * 1000.0 / opts.fps;
    }

    std::optional<HeadPose> pose;
    if (pose_cols == 3 && !(t.rows[r][*yaw].empty() && t.rows[r][*pitch].empty() && t.rows[r][*roll].empty())) {
      pose = HeadPose{t.number(r, *yaw), t.number(r, *pitch), t.number(r, *roll)};
    }
    try {
      result.frames.push_back(BlendshapeFrame::make(coeffs, ts, pose, opts.mode, &result.report));
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(t.lines[r]) + ": " + e.what());
    }
  }
  check_timestamps(result.frames);
  return result;
}

std::string write_blendshape_csv(std::span<const BlendshapeFrame> frames) {
  bool any_pose = false;
  for (const auto& f : frames) any_pose = any_pose || f.pose().has_value();

  std::string out = "frame,timestamp_ms";
  for (auto name : kArkitChannels) (out += ',') += name;
  if (any_pose) out += ",yaw,pitch,roll";
  out += '\n';
  for (std::size_t t = 0; t < frames.size(); ++t) {
    const BlendshapeFrame& f = frames[t];
    out += std::to_string(t) + ',' + format_number(f.timestamp_ms());
    for (double v : f.coefficients()) (out += ',') += format_number(v);
    if (any_pose) {
      if (f.pose()) {
        out += ',' + format_number(f.pose()->yaw) + ',' + format_number(f.pose()->pitch) + ',' +
               format_number(f.pose()->roll);
      } else {
        out += ",,,";
      }
    }
    out += '\n';
  }
  return out;
}

VaTrajectory parse_va_csv(std::string_view text) {
  const CsvTable t = parse_table(text);
  const std::size_t v = t.require("valence");
  const std::size_t a = t.require("arousal");
  t.require("frame");
  reject_unknown_columns(t, [](const std::string& h) { return h == "frame" || h == "valence" || h == "arousal"; });

  std::vector<VaPoint> pts;
  pts.reserve(t.rows.size());
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    VaPoint p{t.number(r, v), t.number(r, a)};
    try {
      p.validate();
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(t.lines[r]) + ": " + e.what());
    }
    pts.push_back(p);
  }
  if (pts.empty()) throw ParseError("VA file has no data rows");
  return VaTrajectory(std::move(pts));
}

std::string write_va_csv(const VaTrajectory& traj) {
  std::string out = "frame,valence,arousal\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    out += std::to_string(i) + ',' + format_number(traj.points()[i].valence) + ',' +
           format_number(traj.points()[i].arousal) + '\n';
  }
  return out;
}

PairedDataset parse_dataset_csv(std::string_view text) {
  const CsvTable t = parse_table(text);
  const auto cols = channel_columns(t);
  const auto motors = motor_columns(t);
  reject_unknown_columns(t, [](const std::string& h) { return find_channel(h) || h == "frame" || is_motor_column(h); });

  std::vector<PairedSample> samples;
  samples.reserve(t.rows.size());
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    PairedSample s;
    for (std::size_t c = 0; c < kChannelCount; ++c) s.blendshapes[c] = t.number(r, cols[c]);
    std::vector<double> act;
    act.reserve(motors.size());
    for (std::size_t m : motors) act.push_back(t.number(r, m));
    try {
      s.actuators = ActuatorVector(std::move(act));
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(t.lines[r]) + ": " + e.what());
    }
    samples.push_back(std::move(s));
  }
  return PairedDataset(std::move(samples));
}

std::string write_dataset_csv(const PairedDataset& ds) {
  std::string out = "frame";
  for (auto name : kArkitChannels) (out += ',') += name;
  for (std::size_t m = 0; m < ds.dof(); ++m) out += ',' + motor_column(m);
  out += '\n';
  for (std::size_t i = 0; i < ds.size(); ++i) {
    out += std::to_string(i);
    for (double v : ds.samples()[i].blendshapes) out += ',' + format_number(v);
    for (double v : ds.samples()[i].actuators.values()) out += ',' + format_number(v);
    out += '\n';
  }
  return out;
}

std::vector<ActuatorVector> parse_motor_csv(std::string_view text) {
  const CsvTable t = parse_table(text);
  const auto motors = motor_columns(t);
  reject_unknown_columns(t, [](const std::string& h) { return h == "frame" || is_motor_column(h); });

  std::vector<ActuatorVector> out;
  out.reserve(t.rows.size());
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    std::vector<double> v;
    v.reserve(motors.size());
    for (std::size_t m : motors) v.push_back(t.number(r, m));
    try {
      out.emplace_back(std::move(v));
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(t.lines[r]) + ": " + e.what());
    }
  }
  return out;
}

std::string write_motor_csv(std::span<const ActuatorVector> motors) {
  const std::size_t d = motors.empty() ? 0 : motors.front().size();
  std::string out = "frame";
  for (std::size_t m = 0; m < d; ++m) out += ',' + motor_column(m);
  out += '\n';
  for (std::size_t t = 0; t < motors.size(); ++t) {
    motors[t].check_size(d);
    out += std::to_string(t);
    for (double v : motors[t].values()) out += ',' + format_number(v);
    out += '\n';
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

}  // namespace animaface
