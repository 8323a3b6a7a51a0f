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

#ifndef DRIVEFIT__FUEL_HPP_
#define DRIVEFIT__FUEL_HPP_

#include "drivefit/error.hpp"
#include "drivefit/signal_ingest.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace drivefit
{

inline constexpr double kMpsToKph = 3.6;

/**
 * @brief Coefficients of the quadratic-in-speed fuel consumption rate model.
 *
 * rate [L/100km] = idle + rolling * v + aero * v^2 + accel_effect * a,
 * with v in kph and a in m/s^2.
 */
struct FuelParams
{
  double idle = 5.0;           // [L/100km]
  double rolling = 0.05;       // [L/100km per kph]
  double aero = 0.001;         // [L/100km per kph^2]
  double accel_effect = 0.2;   // [L/100km per m/s^2]

  void validate() const
  {
    if (!(idle > 0.0) || !(rolling >= 0.0) || !(aero >= 0.0) || !std::isfinite(accel_effect)) {
      throw Error(
        ErrorCode::kInvalidConfig, "fuel parameters require a > 0, b >= 0, c >= 0, finite d");
    }
  }
};

/// Fuel consumption rate [L/100km], clamped at zero under hard braking.
inline double fcr(double speed_kph, double accel, const FuelParams & params = {})
{
  const double rate = params.idle + params.rolling * speed_kph +
                      params.aero * speed_kph * speed_kph + params.accel_effect * accel;
  return std::max(0.0, rate);
}

struct FuelResult
{
  std::vector<double> fcr;  // per sample [L/100km]
  double fuel_liters = 0.0;
  double distance_km = 0.0;
  /// km/L; absent when no distance was covered or no fuel was burned.
  std::optional<double> fuel_efficiency;
};

/**
 * @brief Integrate fuel over the steps whose start sample satisfies `select`.
 *
 * Step i runs from sample i-1 to i and burns (d[i] - d[i-1]) * FCR(i-1) / 100
 * liters, with FCR taken at the step-start speed and acceleration.
 */
template <class Select>
FuelResult fuel_result_where(
  const UniformTrace & trace, const FuelParams & params, Select && select)
{
  FuelResult out;
  const std::size_t n = trace.size();
  out.fcr.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.fcr[i] = fcr(trace.speed[i] * kMpsToKph, trace.accel[i], params);
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (!select(i - 1)) {
      continue;
    }
    const double step_km = trace.distance_km[i] - trace.distance_km[i - 1];
    out.distance_km += step_km;
    out.fuel_liters += step_km * out.fcr[i - 1] / 100.0;
  }
  if (out.distance_km > 0.0 && out.fuel_liters > 0.0) {
    out.fuel_efficiency = out.distance_km / out.fuel_liters;
  }
  return out;
}

inline FuelResult fuel_result(const UniformTrace & trace, const FuelParams & params = {})
{
  return fuel_result_where(trace, params, [](std::size_t) { return true; });
}

/// Min-max position [0, 100] of `current` within the fuel efficiency population.
inline double fuel_index(std::span<const double> population, double current)
{
  if (population.empty()) {
    throw Error(ErrorCode::kEmptyPopulation, "fuel efficiency population is empty");
  }
  const auto [lo, hi] = std::minmax_element(population.begin(), population.end());
  if (*hi == *lo) {
    return 50.0;
  }
  return std::clamp(100.0 * (current - *lo) / (*hi - *lo), 0.0, 100.0);
}

}  // namespace drivefit

#endif  // DRIVEFIT__FUEL_HPP_
