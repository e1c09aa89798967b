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

#include "animaface/smoothing.hpp"

#include <algorithm>
#include <cmath>

namespace animaface {

namespace {

void check_sigma(double sigma) {
  if (!std::isfinite(sigma) || sigma < 0.0) {
    throw ValidationError("smoothing sigma must be finite and >= 0, got " + std::to_string(sigma));
  }
}

// Maps any integer index onto [0, n) by mirroring about the end samples.
std::size_t reflect_index(long long i, std::size_t n) {
  if (n == 1) return 0;
  const long long period = 2 * static_cast<long long>(n - 1);
  long long m = i % period;
  if (m < 0) m += period;
  if (m >= static_cast<long long>(n)) m = period - m;
  return static_cast<std::size_t>(m);
}

}  // namespace

std::size_t SmoothingConfig::effective_radius() const {
  check_sigma(sigma);
  if (radius) return *radius;
  return static_cast<std::size_t>(std::ceil(3.0 * sigma));
}

std::vector<double> gaussian_kernel(const SmoothingConfig& cfg) {
  const std::size_t r = cfg.effective_radius();
  if (cfg.sigma == 0.0) return {1.0};

  std::vector<double> w(2 * r + 1);
  double sum = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    const double x = static_cast<double>(k) - static_cast<double>(r);
    w[k] = std::exp(-0.5 * x * x / (cfg.sigma * cfg.sigma));
    sum += w[k];
  }
  for (double& v : w) v /= sum;
  return w;
}

std::vector<double> smooth_signal(std::span<const double> signal, const SmoothingConfig& cfg) {
  const std::vector<double> kernel = gaussian_kernel(cfg);
  const long long r = static_cast<long long>(kernel.size() / 2);
  const std::size_t n = signal.size();

  std::vector<double> out(n, 0.0);
  for (std::size_t t = 0; t < n; ++t) {
    double acc = 0.0;
    for (long long k = -r; k <= r; ++k) {
      acc += kernel[static_cast<std::size_t>(k + r)] * signal[reflect_index(static_cast<long long>(t) + k, n)];
    }
    out[t] = acc;
  }
  return out;
}

std::vector<BlendshapeFrame> smooth_sequence(std::span<const BlendshapeFrame> frames,
                                             const SmoothingConfig& cfg) {
  if (frames.empty()) throw ValidationError("cannot smooth an empty sequence");
  check_sigma(cfg.sigma);
  if (cfg.sigma == 0.0) return {frames.begin(), frames.end()};

  const std::size_t n = frames.size();
  std::vector<Coefficients> smoothed(n);
  std::vector<double> channel(n);
  for (std::size_t c = 0; c < kChannelCount; ++c) {
    for (std::size_t t = 0; t < n; ++t) channel[t] = frames[t][c];
    const std::vector<double> filtered = smooth_signal(channel, cfg);
    for (std::size_t t = 0; t < n; ++t) smoothed[t][c] = std::clamp(filtered[t], 0.0, 1.0);
  }

  std::vector<BlendshapeFrame> out;
  out.reserve(n);
  for (std::size_t t = 0; t < n; ++t) out.push_back(frames[t].with_coefficients(smoothed[t]));
  return out;
}

}  // namespace animaface
