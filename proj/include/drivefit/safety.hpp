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

#ifndef DRIVEFIT__SAFETY_HPP_
#define DRIVEFIT__SAFETY_HPP_

#include "drivefit/error.hpp"
#include "drivefit/signal_ingest.hpp"

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace drivefit
{

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
/// Below this ego speed [m/s] the headway is treated as infinite.
inline constexpr double kDefaultStationarySpeed = 0.1;

enum class Zone { kAlert, kAttention, kSafe };

inline std::string_view to_string(Zone zone)
{
  switch (zone) {
    case Zone::kAlert:
      return "alert";
    case Zone::kAttention:
      return "attention";
    case Zone::kSafe:
      return "safe";
  }
  return "";
}

/// Upper bounds [s] of the alert and attention bands; both bounds are inclusive.
struct ZoneBoundaries
{
  double alert_max = 1.0;
  double attention_max = 2.0;
};

/// How samples without a detected lead vehicle enter the zoning.
enum class NoLeadPolicy { kExclude, kSafe };

struct SafetyZoning
{
  std::size_t alert_samples = 0;
  std::size_t attention_samples = 0;
  std::size_t safe_samples = 0;
  std::size_t considered_samples = 0;
  double alert_fraction = 0.0;
  double attention_fraction = 0.0;
  double safe_fraction = 0.0;
  /// Percent of considered samples in the attention or safe band.
  double safety_index = 0.0;
};

struct ZoneClassification
{
  std::vector<std::optional<Zone>> zones;
  /// Absent when no sample was considered (no lead for the whole selection).
  std::optional<SafetyZoning> zoning;
};

/// Time gap to the lead vehicle per sample: lead_distance / speed.
inline std::vector<std::optional<double>> headway_series(
  const UniformTrace & trace, double stationary_speed = kDefaultStationarySpeed)
{
  if (!(stationary_speed > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "stationary speed threshold must be positive");
  }
  std::vector<std::optional<double>> headway(trace.size());
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const auto & gap = trace.lead_distance[i];
    if (!gap) {
      continue;
    }
    headway[i] = trace.speed[i] < stationary_speed ? kInfinity : *gap / trace.speed[i];
  }
  return headway;
}

/// Lead speed as ego speed plus the rate of change of the gap. Absent wherever
/// the difference stencil touches a sample without a lead.
inline std::vector<std::optional<double>> estimate_lead_speed(const UniformTrace & trace)
{
  const std::size_t n = trace.size();
  std::vector<std::optional<double>> lead_speed(n);
  const auto & gap = trace.lead_distance;
  const double dt = trace.dt();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i == 0 ? 0 : i - 1;
    const std::size_t hi = i + 1 == n ? i : i + 1;
    if (!gap[lo] || !gap[hi] || !gap[i]) {
      continue;
    }
    const double rate = (*gap[hi] - *gap[lo]) / (static_cast<double>(hi - lo) * dt);
    lead_speed[i] = trace.speed[i] + rate;
  }
  return lead_speed;
}

/// Time to collision: gap / closing speed when closing, otherwise infinite.
inline std::vector<std::optional<double>> ttc_series(
  const UniformTrace & trace, std::span<const std::optional<double>> lead_speed)
{
  if (lead_speed.size() != trace.size()) {
    throw Error(ErrorCode::kInvalidArgument, "lead speed series is not aligned with the trace");
  }
  std::vector<std::optional<double>> ttc(trace.size());
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (!trace.lead_distance[i] || !lead_speed[i]) {
      continue;
    }
    const double closing = trace.speed[i] - *lead_speed[i];
    ttc[i] = closing > 0.0 ? *trace.lead_distance[i] / closing : kInfinity;
  }
  return ttc;
}

inline Zone classify_headway(double headway, const ZoneBoundaries & bounds = {})
{
  if (headway <= bounds.alert_max) {
    return Zone::kAlert;
  }
  if (headway <= bounds.attention_max) {
    return Zone::kAttention;
  }
  return Zone::kSafe;
}

/// Streaming zone counter; samples are pushed one at a time.
class ZoneAccumulator
{
public:
  explicit ZoneAccumulator(ZoneBoundaries bounds = {}, NoLeadPolicy no_lead = NoLeadPolicy::kExclude)
  : bounds_(bounds), no_lead_(no_lead)
  {
  }

  std::optional<Zone> push(const std::optional<double> & headway)
  {
    std::optional<Zone> zone;
    if (headway) {
      zone = classify_headway(*headway, bounds_);
    } else if (no_lead_ == NoLeadPolicy::kSafe) {
      zone = Zone::kSafe;
    }
    if (zone) {
      ++counts_[static_cast<std::size_t>(*zone)];
    }
    return zone;
  }

  std::optional<SafetyZoning> result() const
  {
    SafetyZoning z;
    z.alert_samples = counts_[0];
    z.attention_samples = counts_[1];
    z.safe_samples = counts_[2];
    z.considered_samples = counts_[0] + counts_[1] + counts_[2];
    if (z.considered_samples == 0) {
      return std::nullopt;
    }
    const auto total = static_cast<double>(z.considered_samples);
    z.alert_fraction = static_cast<double>(z.alert_samples) / total;
    z.attention_fraction = static_cast<double>(z.attention_samples) / total;
    z.safe_fraction = static_cast<double>(z.safe_samples) / total;
    z.safety_index =
      100.0 * static_cast<double>(z.attention_samples + z.safe_samples) / total;
    return z;
  }

private:
  ZoneBoundaries bounds_;
  NoLeadPolicy no_lead_;
  std::size_t counts_[3] = {0, 0, 0};
};

inline ZoneClassification classify_zones(
  std::span<const std::optional<double>> headway, const ZoneBoundaries & bounds = {},
  NoLeadPolicy no_lead = NoLeadPolicy::kExclude)
{
  ZoneAccumulator acc(bounds, no_lead);
  ZoneClassification out;
  out.zones.reserve(headway.size());
  for (const auto & h : headway) {
    out.zones.push_back(acc.push(h));
  }
  out.zoning = acc.result();
  return out;
}

/// Zoning over the samples for which `select(i)` holds.
template <class Select>
std::optional<SafetyZoning> zoning_where(
  std::span<const std::optional<double>> headway, Select && select,
  const ZoneBoundaries & bounds = {}, NoLeadPolicy no_lead = NoLeadPolicy::kExclude)
{
  ZoneAccumulator acc(bounds, no_lead);
  for (std::size_t i = 0; i < headway.size(); ++i) {
    if (select(i)) {
      acc.push(headway[i]);
    }
  }
  return acc.result();
}

}  // namespace drivefit

#endif  // DRIVEFIT__SAFETY_HPP_
