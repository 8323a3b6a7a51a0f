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

#ifndef DRIVEFIT__SIGNAL_INGEST_HPP_
#define DRIVEFIT__SIGNAL_INGEST_HPP_

#include "drivefit/error.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace drivefit
{

/// One decoded CAN record. Units: s, m/s, m, m/s^2, km.
struct SignalSample
{
  double timestamp = 0.0;
  double speed = 0.0;
  std::optional<double> lead_distance;
  std::optional<double> accel;
  bool cruise_on = false;
  std::optional<double> odometer;
};

/// Raw signals of one drive, sorted by timestamp with no duplicates.
struct TripLog
{
  std::string ride_id;
  std::vector<SignalSample> samples;
  std::map<std::string, std::string> source_meta;
  std::size_t skipped_rows = 0;
};

/**
 * @brief Fixed-rate kinematic trace.
 *
 * All per-sample vectors have the same length. accel and jerk are zero until
 * derive_acceleration() and compute_jerk() fill them. measured_accel holds the
 * resampled accel column when the log carried one on every row.
 */
struct UniformTrace
{
  double rate_hz = 10.0;
  double t0 = 0.0;
  std::vector<double> speed;
  std::vector<std::optional<double>> lead_distance;
  std::optional<std::vector<double>> measured_accel;
  std::vector<double> accel;
  std::vector<double> jerk;
  std::vector<bool> cruise_on;
  std::vector<double> distance_km;

  std::size_t size() const noexcept { return speed.size(); }
  double dt() const noexcept { return 1.0 / rate_hz; }
  double time_at(std::size_t i) const noexcept { return t0 + static_cast<double>(i) / rate_hz; }
};

enum class BadRowPolicy { kReject, kSkip };

struct ParseOptions
{
  BadRowPolicy bad_rows = BadRowPolicy::kReject;
};

inline constexpr double kDefaultRateHz = 10.0;
inline constexpr double kMinRateHz = 1.0;
inline constexpr double kMaxRateHz = 100.0;
inline constexpr std::size_t kDefaultSmoothingWindow = 5;
inline constexpr std::array<std::string_view, 6> kCanonicalColumns = {
  "timestamp", "speed", "lead_distance", "accel", "cruise_on", "odometer"};

namespace detail
{

inline std::string_view trim(std::string_view s)
{
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

inline void split_csv_line(std::string_view line, std::vector<std::string_view> & cells)
{
  cells.clear();
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(trim(line.substr(start)));
      return;
    }
    cells.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

inline std::optional<double> parse_number(std::string_view cell)
{
  if (!cell.empty() && cell.front() == '+') {
    cell.remove_prefix(1);
  }
  double value = 0.0;
  const auto * end = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(cell.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

inline double lerp(double a, double b, double w) { return a + (b - a) * w; }

/// d/dt on a uniform grid. Central differences inside, second-order one-sided
/// stencils at the ends (plain two-point difference when only two points).
inline std::vector<double> differentiate(std::span<const double> x, double dt)
{
  const std::size_t n = x.size();
  std::vector<double> out(n, 0.0);
  if (n < 2) {
    return out;
  }
  if (n == 2) {
    out[0] = out[1] = (x[1] - x[0]) / dt;
    return out;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    out[i] = (x[i + 1] - x[i - 1]) / (2.0 * dt);
  }
  out[0] = (-3.0 * x[0] + 4.0 * x[1] - x[2]) / (2.0 * dt);
  out[n - 1] = (3.0 * x[n - 1] - 4.0 * x[n - 2] + x[n - 3]) / (2.0 * dt);
  return out;
}

/// Centered moving average; the window shrinks symmetrically near the ends.
inline std::vector<double> moving_average(std::span<const double> x, std::size_t window)
{
  const std::size_t n = x.size();
  if (window <= 1 || n == 0) {
    return {x.begin(), x.end()};
  }
  const std::size_t half = window / 2;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t reach = std::min({half, i, n - 1 - i});
    double sum = 0.0;
    for (std::size_t k = i - reach; k <= i + reach; ++k) {
      sum += x[k];
    }
    out[i] = sum / static_cast<double>(2 * reach + 1);
  }
  return out;
}

}  // namespace detail

/**
 * @brief Parse a canonical trip CSV.
 *
 * The header names columns from kCanonicalColumns in any order; timestamp,
 * speed and cruise_on are required. Rows that fail to parse or violate a
 * sample invariant throw kInvalidRow unless the skip policy is set, in which
 * case they are counted in TripLog::skipped_rows.
 */
inline TripLog parse_trip_log(
  std::string_view csv, std::string ride_id, const ParseOptions & options = {})
{
  if (csv.size() >= 3 && csv.substr(0, 3) == "\xEF\xBB\xBF") {
    csv.remove_prefix(3);
  }

  TripLog log;
  log.ride_id = std::move(ride_id);

  std::size_t pos = 0;
  std::size_t line_no = 0;
  auto next_line = [&](std::string_view & line) {
    if (pos >= csv.size()) {
      return false;
    }
    const auto nl = csv.find('\n', pos);
    const auto end = nl == std::string_view::npos ? csv.size() : nl;
    line = csv.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') {
      line.remove_suffix(1);
    }
    pos = end + 1;
    ++line_no;
    return true;
  };

  std::string_view line;
  bool have_header = false;
  while (next_line(line)) {
    if (!detail::trim(line).empty()) {
      have_header = true;
      break;
    }
  }
  if (!have_header) {
    throw Error(ErrorCode::kEmptyLog, "input has no header row");
  }

  constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);
  std::array<std::size_t, kCanonicalColumns.size()> column_of{};
  column_of.fill(kAbsent);
  std::vector<std::string_view> cells;
  detail::split_csv_line(line, cells);
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const auto it = std::find(kCanonicalColumns.begin(), kCanonicalColumns.end(), cells[c]);
    if (it == kCanonicalColumns.end()) {
      throw Error(
        ErrorCode::kSchemaMismatch, "unknown column '" + std::string(cells[c]) + "' in header");
    }
    auto & slot = column_of[static_cast<std::size_t>(it - kCanonicalColumns.begin())];
    if (slot != kAbsent) {
      throw Error(ErrorCode::kSchemaMismatch, "duplicate column '" + std::string(cells[c]) + "'");
    }
    slot = c;
  }
  for (const std::size_t required : {0UL, 1UL, 4UL}) {
    if (column_of[required] == kAbsent) {
      throw Error(
        ErrorCode::kSchemaMismatch,
        "missing required column '" + std::string(kCanonicalColumns[required]) + "'");
    }
  }
  const std::size_t width = cells.size();

  auto reject = [&](const std::string & why) {
    if (options.bad_rows == BadRowPolicy::kSkip) {
      ++log.skipped_rows;
      return;
    }
    throw Error(ErrorCode::kInvalidRow, "line " + std::to_string(line_no) + ": " + why);
  };

  auto optional_cell = [&](std::size_t column, std::optional<double> & out) {
    if (column_of[column] == kAbsent || cells[column_of[column]].empty()) {
      out.reset();
      return true;
    }
    out = detail::parse_number(cells[column_of[column]]);
    return out.has_value();
  };

  while (next_line(line)) {
    if (detail::trim(line).empty()) {
      continue;
    }
    detail::split_csv_line(line, cells);
    if (cells.size() != width) {
      reject("expected " + std::to_string(width) + " cells, got " + std::to_string(cells.size()));
      continue;
    }
    SignalSample s;
    const auto t = detail::parse_number(cells[column_of[0]]);
    const auto v = detail::parse_number(cells[column_of[1]]);
    const auto cruise = cells[column_of[4]];
    if (!t || !v) {
      reject("unparsable timestamp or speed");
      continue;
    }
    if (cruise != "0" && cruise != "1") {
      reject("cruise_on must be 0 or 1");
      continue;
    }
    s.timestamp = *t;
    s.speed = *v;
    s.cruise_on = cruise == "1";
    if (!optional_cell(2, s.lead_distance) || !optional_cell(3, s.accel) ||
        !optional_cell(5, s.odometer)) {
      reject("unparsable numeric cell");
      continue;
    }
    if (s.speed < 0.0) {
      reject("negative speed");
      continue;
    }
    if (s.lead_distance && *s.lead_distance <= 0.0) {
      reject("lead_distance must be positive");
      continue;
    }
    if (s.odometer && *s.odometer < 0.0) {
      reject("negative odometer");
      continue;
    }
    log.samples.push_back(s);
  }

  if (log.samples.size() < 2) {
    throw Error(
      ErrorCode::kEmptyLog,
      std::to_string(log.samples.size()) + " valid sample(s); at least 2 are required");
  }

  std::stable_sort(
    log.samples.begin(), log.samples.end(),
    [](const SignalSample & a, const SignalSample & b) { return a.timestamp < b.timestamp; });
  std::optional<double> last_odometer;
  for (std::size_t i = 0; i < log.samples.size(); ++i) {
    const auto & s = log.samples[i];
    if (i > 0 && s.timestamp == log.samples[i - 1].timestamp) {
      throw Error(
        ErrorCode::kNonMonotonicTime, "duplicate timestamp " + std::to_string(s.timestamp));
    }
    if (s.odometer) {
      if (last_odometer && *s.odometer < *last_odometer) {
        throw Error(
          ErrorCode::kInvalidRow, "odometer decreases at t=" + std::to_string(s.timestamp));
      }
      last_odometer = s.odometer;
    }
  }
  if (options.bad_rows == BadRowPolicy::kSkip) {
    log.source_meta["skipped_rows"] = std::to_string(log.skipped_rows);
  }
  return log;
}

/**
 * @brief Resample a log onto a uniform grid starting at its first timestamp.
 *
 * Speed, lead distance, odometer and accel interpolate linearly; cruise state
 * is held from the latest raw sample. A grid point within 1 us of a raw sample
 * takes that sample's values as-is. Lead distance is absent unless both
 * bracketing samples carry it. Without a complete odometer column, distance is
 * the trapezoidal integral of the resampled speed.
 */
inline UniformTrace resample(const TripLog & log, double rate_hz = kDefaultRateHz)
{
  if (!(rate_hz >= kMinRateHz && rate_hz <= kMaxRateHz)) {
    throw Error(ErrorCode::kInvalidArgument, "rate_hz must lie in [1, 100]");
  }
  const auto & raw = log.samples;
  if (raw.size() < 2) {
    throw Error(ErrorCode::kEmptyLog, "log has fewer than 2 samples");
  }
  constexpr double kCoincident = 1e-6;

  const double t0 = raw.front().timestamp;
  const double span_s = raw.back().timestamp - t0;
  const auto n = static_cast<std::size_t>(std::floor(span_s * rate_hz + 1e-9)) + 1;
  if (n < 2) {
    throw Error(ErrorCode::kDurationTooShort, "log spans fewer than 2 grid points");
  }

  const bool has_accel =
    std::all_of(raw.begin(), raw.end(), [](const SignalSample & s) { return s.accel.has_value(); });
  const bool has_odometer = std::all_of(
    raw.begin(), raw.end(), [](const SignalSample & s) { return s.odometer.has_value(); });

  UniformTrace trace;
  trace.rate_hz = rate_hz;
  trace.t0 = t0;
  trace.speed.resize(n);
  trace.lead_distance.resize(n);
  trace.accel.assign(n, 0.0);
  trace.jerk.assign(n, 0.0);
  trace.cruise_on.resize(n);
  trace.distance_km.assign(n, 0.0);
  if (has_accel) {
    trace.measured_accel.emplace(n);
  }
  std::vector<double> odometer(has_odometer ? n : 0);

  std::size_t j = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) / rate_hz;
    while (j + 1 < raw.size() && raw[j + 1].timestamp - t0 <= t + kCoincident) {
      ++j;
    }
    const auto & lo = raw[j];
    trace.cruise_on[k] = lo.cruise_on;
    if (std::abs(lo.timestamp - t0 - t) <= kCoincident || j + 1 == raw.size()) {
      trace.speed[k] = lo.speed;
      trace.lead_distance[k] = lo.lead_distance;
      if (has_accel) {
        (*trace.measured_accel)[k] = *lo.accel;
      }
      if (has_odometer) {
        odometer[k] = *lo.odometer;
      }
      continue;
    }
    const auto & hi = raw[j + 1];
    const double w = (t - (lo.timestamp - t0)) / (hi.timestamp - lo.timestamp);
    trace.speed[k] = detail::lerp(lo.speed, hi.speed, w);
    if (lo.lead_distance && hi.lead_distance) {
      trace.lead_distance[k] = detail::lerp(*lo.lead_distance, *hi.lead_distance, w);
    }
    if (has_accel) {
      (*trace.measured_accel)[k] = detail::lerp(*lo.accel, *hi.accel, w);
    }
    if (has_odometer) {
      odometer[k] = detail::lerp(*lo.odometer, *hi.odometer, w);
    }
  }

  if (has_odometer) {
    for (std::size_t k = 0; k < n; ++k) {
      trace.distance_km[k] = std::max(0.0, odometer[k] - odometer[0]);
    }
    for (std::size_t k = 1; k < n; ++k) {
      trace.distance_km[k] = std::max(trace.distance_km[k], trace.distance_km[k - 1]);
    }
  } else {
    const double dt = trace.dt();
    for (std::size_t k = 1; k < n; ++k) {
      trace.distance_km[k] =
        trace.distance_km[k - 1] + 0.5 * (trace.speed[k - 1] + trace.speed[k]) * dt / 1000.0;
    }
  }
  return trace;
}

struct AccelerationOptions
{
  /// Odd moving-average window applied to accel; 0 or 1 disables smoothing.
  std::size_t smoothing_window = 0;
};

/// Fill accel from the measured column when present, else by differentiating speed.
inline UniformTrace derive_acceleration(UniformTrace trace, const AccelerationOptions & options = {})
{
  if (options.smoothing_window > 1 && options.smoothing_window % 2 == 0) {
    throw Error(ErrorCode::kInvalidArgument, "smoothing window must be odd");
  }
  trace.accel = trace.measured_accel ? *trace.measured_accel
                                     : detail::differentiate(trace.speed, trace.dt());
  if (options.smoothing_window > 1) {
    trace.accel = detail::moving_average(trace.accel, options.smoothing_window);
  }
  return trace;
}

inline UniformTrace compute_jerk(UniformTrace trace)
{
  trace.jerk = detail::differentiate(trace.accel, trace.dt());
  return trace;
}

}  // namespace drivefit

#endif  // DRIVEFIT__SIGNAL_INGEST_HPP_
