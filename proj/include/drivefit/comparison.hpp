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

#ifndef DRIVEFIT__COMPARISON_HPP_
#define DRIVEFIT__COMPARISON_HPP_

#include "drivefit/error.hpp"
#include "drivefit/ride_summary.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace drivefit
{

inline constexpr std::size_t kDefaultComparisonWindow = 5;

/// Presence-aware mean of every metric slot; a slot absent in all rides stays absent.
inline MetricValues rolling_average(std::span<const RideSummary> rides)
{
  MetricValues sum{};
  std::array<std::size_t, kMetricNames.size()> count{};
  for (const auto & ride : rides) {
    const auto values = metric_values(ride);
    for (std::size_t k = 0; k < values.size(); ++k) {
      if (values[k]) {
        sum[k] = sum[k].value_or(0.0) + *values[k];
        ++count[k];
      }
    }
  }
  MetricValues mean;
  for (std::size_t k = 0; k < mean.size(); ++k) {
    if (count[k] > 0) {
      mean[k] = *sum[k] / static_cast<double>(count[k]);
    }
  }
  return mean;
}

/// Percent change from `baseline` to `recent`; absent for an absent or zero baseline.
inline std::optional<double> change_rate(
  std::optional<double> recent, std::optional<double> baseline)
{
  if (!recent || !baseline || *baseline == 0.0) {
    return std::nullopt;
  }
  return 100.0 * (*recent - *baseline) / *baseline;
}

inline MetricValues change_rates(const MetricValues & recent, const MetricValues & baseline)
{
  MetricValues out;
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = change_rate(recent[k], baseline[k]);
  }
  return out;
}

struct ComparisonOptions
{
  std::size_t window = kDefaultComparisonWindow;
  bool window_includes_recent = false;
};

struct ComparisonReport
{
  RideSummary recent;
  std::optional<RideSummary> previous;
  std::size_t window = kDefaultComparisonWindow;
  /// Rides that entered the rolling average, oldest first.
  std::vector<std::string> window_ride_ids;
  MetricValues rolling_avg;
  MetricValues change_to_avg;
  MetricValues change_to_prev;
};

/// Chronological order: by start time, insertion order breaking ties.
inline std::vector<RideSummary> chronological(std::span<const RideSummary> insertion_order)
{
  std::vector<RideSummary> rides(insertion_order.begin(), insertion_order.end());
  std::stable_sort(rides.begin(), rides.end(), [](const RideSummary & a, const RideSummary & b) {
    return a.started_at < b.started_at;
  });
  return rides;
}

/// `rides` must be in chronological order.
inline ComparisonReport comparison_report(
  std::span<const RideSummary> rides, std::string_view ride_id, const ComparisonOptions & options = {})
{
  if (options.window < 1) {
    throw Error(ErrorCode::kInvalidArgument, "comparison window must be at least 1");
  }
  const auto it = std::find_if(
    rides.begin(), rides.end(), [&](const RideSummary & r) { return r.ride_id == ride_id; });
  if (it == rides.end()) {
    throw Error(ErrorCode::kRideNotFound, "no ride '" + std::string(ride_id) + "'");
  }
  const auto pos = static_cast<std::size_t>(it - rides.begin());

  ComparisonReport report;
  report.recent = *it;
  report.window = options.window;
  if (pos > 0) {
    report.previous = rides[pos - 1];
  }

  const std::size_t end = options.window_includes_recent ? pos + 1 : pos;
  const std::size_t begin = end > options.window ? end - options.window : 0;
  const auto window = rides.subspan(begin, end - begin);
  for (const auto & r : window) {
    report.window_ride_ids.push_back(r.ride_id);
  }
  report.rolling_avg = rolling_average(window);

  const auto recent = metric_values(report.recent);
  report.change_to_avg = change_rates(recent, report.rolling_avg);
  if (report.previous) {
    report.change_to_prev = change_rates(recent, metric_values(*report.previous));
  }
  return report;
}

struct TrendPoint
{
  std::size_t ordinal = 0;  // 1-based position in chronological order
  std::string started_at;
  std::optional<double> value;

  bool operator==(const TrendPoint &) const = default;
};

struct TrendSeries
{
  std::string metric_name;
  std::vector<TrendPoint> points;
};

/// `rides` must be in chronological order.
inline TrendSeries trend_series(std::span<const RideSummary> rides, std::string_view metric_name)
{
  const auto slot = find_metric(metric_name);
  if (!slot) {
    throw Error(ErrorCode::kUnknownMetric, "unknown metric '" + std::string(metric_name) + "'");
  }
  TrendSeries series;
  series.metric_name = std::string(metric_name);
  for (std::size_t i = 0; i < rides.size(); ++i) {
    series.points.push_back({i + 1, rides[i].started_at, metric_values(rides[i])[*slot]});
  }
  return series;
}

}  // namespace drivefit

#endif  // DRIVEFIT__COMPARISON_HPP_
