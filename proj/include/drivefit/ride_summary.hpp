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

#ifndef DRIVEFIT__RIDE_SUMMARY_HPP_
#define DRIVEFIT__RIDE_SUMMARY_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace drivefit
{

inline constexpr int kSchemaVersion = 1;

/// A value split by cruise state. A state with no samples has an absent slot.
template <class T>
struct StateSplit
{
  std::optional<T> on;
  std::optional<T> off;
  std::optional<T> all;

  bool operator==(const StateSplit &) const = default;
};

using MetricTriple = StateSplit<double>;

struct RideSummary
{
  std::string ride_id;
  std::string started_at;  // ISO-8601 UTC
  double duration_s = 0.0;
  double distance_km = 0.0;
  double mean_speed_kph = 0.0;
  double acc_on_percent = 0.0;
  MetricTriple safety_index;
  MetricTriple fuel_index;
  MetricTriple fuel_efficiency_kmpl;
  MetricTriple comfort_index;
  int schema_version = kSchemaVersion;

  bool operator==(const RideSummary &) const = default;
};

// Published metric slots, in report column order. Trend queries and the
// comparison report address metrics by these names.
inline constexpr std::array<std::string_view, 16> kMetricNames = {
  "duration_s",
  "distance_km",
  "mean_speed_kph",
  "acc_on_percent",
  "safety_index.on",
  "safety_index.off",
  "safety_index.all",
  "fuel_index.on",
  "fuel_index.off",
  "fuel_index.all",
  "fuel_efficiency_kmpl.on",
  "fuel_efficiency_kmpl.off",
  "fuel_efficiency_kmpl.all",
  "comfort_index.on",
  "comfort_index.off",
  "comfort_index.all",
};

using MetricValues = std::array<std::optional<double>, kMetricNames.size()>;

inline std::optional<std::size_t> find_metric(std::string_view name)
{
  for (std::size_t i = 0; i < kMetricNames.size(); ++i) {
    if (kMetricNames[i] == name) {
      return i;
    }
  }
  return std::nullopt;
}

inline MetricValues metric_values(const RideSummary & s)
{
  MetricValues v;
  v[0] = s.duration_s;
  v[1] = s.distance_km;
  v[2] = s.mean_speed_kph;
  v[3] = s.acc_on_percent;
  std::size_t k = 4;
  for (const MetricTriple * t :
       {&s.safety_index, &s.fuel_index, &s.fuel_efficiency_kmpl, &s.comfort_index}) {
    v[k++] = t->on;
    v[k++] = t->off;
    v[k++] = t->all;
  }
  return v;
}

}  // namespace drivefit

#endif  // DRIVEFIT__RIDE_SUMMARY_HPP_
