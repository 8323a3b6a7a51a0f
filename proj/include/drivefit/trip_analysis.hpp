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

#ifndef DRIVEFIT__TRIP_ANALYSIS_HPP_
#define DRIVEFIT__TRIP_ANALYSIS_HPP_

#include "drivefit/comfort.hpp"
#include "drivefit/fuel.hpp"
#include "drivefit/ride_summary.hpp"
#include "drivefit/safety.hpp"
#include "drivefit/signal_ingest.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace drivefit
{

struct CruiseSegment
{
  bool cruise_on = false;
  std::size_t begin = 0;  // inclusive
  std::size_t end = 0;    // exclusive

  bool operator==(const CruiseSegment &) const = default;
};

struct CruiseSegmentation
{
  std::vector<CruiseSegment> segments;
  double acc_on_percent = 0.0;
};

/// Maximal runs of constant cruise state.
inline CruiseSegmentation segment_by_cruise(const std::vector<bool> & cruise_on)
{
  CruiseSegmentation out;
  std::size_t on_samples = 0;
  for (std::size_t i = 0; i < cruise_on.size(); ++i) {
    on_samples += cruise_on[i] ? 1 : 0;
    if (out.segments.empty() || out.segments.back().cruise_on != cruise_on[i]) {
      out.segments.push_back({cruise_on[i], i, i + 1});
    } else {
      out.segments.back().end = i + 1;
    }
  }
  if (!cruise_on.empty()) {
    out.acc_on_percent =
      100.0 * static_cast<double>(on_samples) / static_cast<double>(cruise_on.size());
  }
  return out;
}

/// Every knob of the ingest-to-summary pipeline.
struct AnalysisSettings
{
  double rate_hz = kDefaultRateHz;
  AccelerationOptions acceleration;
  double stationary_speed = kDefaultStationarySpeed;
  ZoneBoundaries zones;
  NoLeadPolicy no_lead = NoLeadPolicy::kExclude;
  ComfortThresholds comfort;
  FuelParams fuel;
};

/// Full-resolution per-sample series behind a summary.
struct TripDiagnostics
{
  double rate_hz = kDefaultRateHz;
  double t0 = 0.0;
  std::vector<double> speed;
  std::vector<double> accel;
  std::vector<double> jerk;
  std::vector<bool> cruise_on;
  std::vector<double> distance_km;
  std::vector<std::optional<double>> headway;
  std::vector<std::optional<Zone>> zone;
  std::vector<std::optional<double>> ttc;
  std::vector<double> fcr;
  std::vector<bool> violation;
  StateSplit<SafetyZoning> zoning;

  std::size_t size() const noexcept { return speed.size(); }
  double time_at(std::size_t i) const noexcept { return t0 + static_cast<double>(i) / rate_hz; }
};

struct TripAnalysis
{
  RideSummary summary;
  TripDiagnostics diagnostics;
  /// Rows dropped by the skip-bad-rows policy.
  std::size_t skipped_rows = 0;
};

/**
 * @brief Compute every per-ride metric split by cruise state.
 *
 * `trace` must already carry accel and jerk. `fuel_history` holds the fuel
 * efficiency values of previously stored rides; together with this ride's own
 * values it forms the min-max population of the fuel index.
 */
inline TripAnalysis analyze_trip(
  const UniformTrace & trace, const AnalysisSettings & settings, std::string ride_id,
  std::string started_at, std::span<const double> fuel_history = {})
{
  const std::size_t n = trace.size();
  if (n < 2) {
    throw Error(ErrorCode::kDurationTooShort, "trace has fewer than 2 samples");
  }
  settings.fuel.validate();

  const auto & cruise = trace.cruise_on;
  auto on = [&](std::size_t i) { return static_cast<bool>(cruise[i]); };
  auto off = [&](std::size_t i) { return !cruise[i]; };

  const auto segmentation = segment_by_cruise(cruise);
  const bool has_on = segmentation.acc_on_percent > 0.0;
  const bool has_off = segmentation.acc_on_percent < 100.0;

  TripAnalysis out;
  auto & diag = out.diagnostics;
  diag.rate_hz = trace.rate_hz;
  diag.t0 = trace.t0;
  diag.speed = trace.speed;
  diag.accel = trace.accel;
  diag.jerk = trace.jerk;
  diag.cruise_on = trace.cruise_on;
  diag.distance_km = trace.distance_km;

  // Safety
  diag.headway = headway_series(trace, settings.stationary_speed);
  auto classification = classify_zones(diag.headway, settings.zones, settings.no_lead);
  diag.zone = std::move(classification.zones);
  diag.zoning.all = classification.zoning;
  if (has_on) {
    diag.zoning.on = zoning_where(diag.headway, on, settings.zones, settings.no_lead);
  }
  if (has_off) {
    diag.zoning.off = zoning_where(diag.headway, off, settings.zones, settings.no_lead);
  }
  diag.ttc = ttc_series(trace, estimate_lead_speed(trace));

  // Fuel
  const auto fuel_all = fuel_result(trace, settings.fuel);
  diag.fcr = fuel_all.fcr;
  std::optional<FuelResult> fuel_on;
  std::optional<FuelResult> fuel_off;
  if (has_on) {
    fuel_on = fuel_result_where(trace, settings.fuel, on);
  }
  if (has_off) {
    fuel_off = fuel_result_where(trace, settings.fuel, off);
  }

  // Comfort
  const auto comfort_all = comfort_result(trace, settings.comfort);
  diag.violation = comfort_all.violation_mask;
  const auto comfort_on = comfort_result_where(trace, settings.comfort, on);
  const auto comfort_off = comfort_result_where(trace, settings.comfort, off);

  auto & s = out.summary;
  s.ride_id = std::move(ride_id);
  s.started_at = std::move(started_at);
  s.duration_s = static_cast<double>(n - 1) / trace.rate_hz;
  s.distance_km = trace.distance_km.back();
  double speed_sum = 0.0;
  for (const double v : trace.speed) {
    speed_sum += v;
  }
  s.mean_speed_kph = speed_sum / static_cast<double>(n) * kMpsToKph;
  s.acc_on_percent = segmentation.acc_on_percent;

  auto index_of = [](const std::optional<SafetyZoning> & z) -> std::optional<double> {
    if (!z) {
      return std::nullopt;
    }
    return z->safety_index;
  };
  s.safety_index = {index_of(diag.zoning.on), index_of(diag.zoning.off), index_of(diag.zoning.all)};

  auto efficiency_of = [](const std::optional<FuelResult> & f) -> std::optional<double> {
    if (!f) {
      return std::nullopt;
    }
    return f->fuel_efficiency;
  };
  s.fuel_efficiency_kmpl = {
    efficiency_of(fuel_on), efficiency_of(fuel_off), fuel_all.fuel_efficiency};

  std::vector<double> population(fuel_history.begin(), fuel_history.end());
  for (const auto & fe : {s.fuel_efficiency_kmpl.on, s.fuel_efficiency_kmpl.off,
                          s.fuel_efficiency_kmpl.all}) {
    if (fe) {
      population.push_back(*fe);
    }
  }
  auto scaled = [&](const std::optional<double> & fe) -> std::optional<double> {
    if (!fe) {
      return std::nullopt;
    }
    return fuel_index(population, *fe);
  };
  s.fuel_index = {
    scaled(s.fuel_efficiency_kmpl.on), scaled(s.fuel_efficiency_kmpl.off),
    scaled(s.fuel_efficiency_kmpl.all)};

  auto comfort_of = [](const std::optional<ComfortResult> & c) -> std::optional<double> {
    if (!c) {
      return std::nullopt;
    }
    return c->comfort_index;
  };
  s.comfort_index = {comfort_of(comfort_on), comfort_of(comfort_off), comfort_all.comfort_index};
  return out;
}

inline RideSummary summarize_trip(
  const UniformTrace & trace, const AnalysisSettings & settings, std::string ride_id,
  std::string started_at, std::span<const double> fuel_history = {})
{
  return analyze_trip(trace, settings, std::move(ride_id), std::move(started_at), fuel_history)
    .summary;
}

}  // namespace drivefit

#endif  // DRIVEFIT__TRIP_ANALYSIS_HPP_
