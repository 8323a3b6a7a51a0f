// Copyright 2026 The DriveFit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DRIVEFIT__COMFORT_HPP_
#define DRIVEFIT__COMFORT_HPP_

#include "drivefit/signal_ingest.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace drivefit
{

/// Longitudinal limits; a sample is uncomfortable only when a limit is strictly exceeded.
struct ComfortThresholds
{
  double accel_max = 2.0;   // [m/s^2]
  double accel_min = -3.5;  // [m/s^2]
  double jerk_abs = 5.0;    // [m/s^3]
};

inline bool is_discomfort(double accel, double jerk, const ComfortThresholds & limits = {})
{
  return accel > limits.accel_max || accel < limits.accel_min || jerk > limits.jerk_abs ||
         jerk < -limits.jerk_abs;
}

struct ComfortResult
{
  double discomfort_fraction = 0.0;
  double comfort_index = 100.0;
  std::size_t considered_samples = 0;
  std::vector<bool> violation_mask;
};

/// Comfort over the samples for which `select(i)` holds; absent for an empty selection.
template <class Select>
std::optional<ComfortResult> comfort_result_where(
  const UniformTrace & trace, const ComfortThresholds & limits, Select && select)
{
  ComfortResult out;
  out.violation_mask.resize(trace.size());
  std::size_t violations = 0;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const bool bad = is_discomfort(trace.accel[i], trace.jerk[i], limits);
    out.violation_mask[i] = bad;
    if (select(i)) {
      ++out.considered_samples;
      violations += bad ? 1 : 0;
    }
  }
  if (out.considered_samples == 0) {
    return std::nullopt;
  }
  out.discomfort_fraction =
    static_cast<double>(violations) / static_cast<double>(out.considered_samples);
  out.comfort_index = 100.0 * (1.0 - out.discomfort_fraction);
  return out;
}

inline ComfortResult comfort_result(const UniformTrace & trace, const ComfortThresholds & limits = {})
{
  auto out = comfort_result_where(trace, limits, [](std::size_t) { return true; });
  return out ? std::move(*out) : ComfortResult{};
}

}  // namespace drivefit

#endif  // DRIVEFIT__COMFORT_HPP_
