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

#ifndef DRIVEFIT__JSON_CODEC_HPP_
#define DRIVEFIT__JSON_CODEC_HPP_

#include "drivefit/comparison.hpp"
#include "drivefit/error.hpp"
#include "drivefit/ride_summary.hpp"
#include "drivefit/trip_analysis.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

// JSON documents exchanged by the store, the HTTP service and the CLI.
// Absent values are null. Non-finite series values are the string "inf".

namespace drivefit
{

using Json = nlohmann::ordered_json;

inline constexpr std::size_t kMaxTransportPoints = 2000;

namespace detail
{

inline Json optional_number(const std::optional<double> & v)
{
  return v ? Json(*v) : Json(nullptr);
}

inline Json series_number(double v)
{
  if (std::isinf(v)) {
    return v > 0 ? Json("inf") : Json("-inf");
  }
  return Json(v);
}

inline Json series_number(const std::optional<double> & v)
{
  return v ? series_number(*v) : Json(nullptr);
}

[[noreturn]] inline void malformed(const std::string & what)
{
  throw Error(ErrorCode::kInvalidArgument, "malformed document: " + what);
}

inline const Json & member(const Json & j, const char * key)
{
  if (!j.is_object() || !j.contains(key)) {
    malformed(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

inline double number_of(const Json & j, const char * what)
{
  if (!j.is_number()) {
    malformed(std::string("'") + what + "' is not a number");
  }
  return j.get<double>();
}

inline std::optional<double> optional_number_of(const Json & j, const char * what)
{
  if (j.is_null()) {
    return std::nullopt;
  }
  return number_of(j, what);
}

inline std::optional<double> series_value_of(const Json & j)
{
  if (j.is_null()) {
    return std::nullopt;
  }
  if (j.is_string()) {
    const auto & s = j.get_ref<const std::string &>();
    if (s == "inf") {
      return std::numeric_limits<double>::infinity();
    }
    if (s == "-inf") {
      return -std::numeric_limits<double>::infinity();
    }
    malformed("unexpected series string '" + s + "'");
  }
  return number_of(j, "series value");
}

}  // namespace detail

inline Json to_json(const MetricTriple & t)
{
  return Json{
    {"on", detail::optional_number(t.on)},
    {"off", detail::optional_number(t.off)},
    {"all", detail::optional_number(t.all)}};
}

inline Json to_json(const RideSummary & s)
{
  return Json{
    {"ride_id", s.ride_id},
    {"started_at", s.started_at},
    {"duration_s", s.duration_s},
    {"distance_km", s.distance_km},
    {"mean_speed_kph", s.mean_speed_kph},
    {"acc_on_percent", s.acc_on_percent},
    {"safety_index", to_json(s.safety_index)},
    {"fuel_index", to_json(s.fuel_index)},
    {"fuel_efficiency_kmpl", to_json(s.fuel_efficiency_kmpl)},
    {"comfort_index", to_json(s.comfort_index)},
    {"schema_version", s.schema_version}};
}

inline MetricTriple metric_triple_from_json(const Json & j, const char * name)
{
  const auto & t = detail::member(j, name);
  return {
    detail::optional_number_of(detail::member(t, "on"), name),
    detail::optional_number_of(detail::member(t, "off"), name),
    detail::optional_number_of(detail::member(t, "all"), name)};
}

inline RideSummary ride_summary_from_json(const Json & j)
{
  RideSummary s;
  const auto & id = detail::member(j, "ride_id");
  const auto & started = detail::member(j, "started_at");
  if (!id.is_string() || !started.is_string()) {
    detail::malformed("ride_id and started_at must be strings");
  }
  s.ride_id = id.get<std::string>();
  s.started_at = started.get<std::string>();
  s.duration_s = detail::number_of(detail::member(j, "duration_s"), "duration_s");
  s.distance_km = detail::number_of(detail::member(j, "distance_km"), "distance_km");
  s.mean_speed_kph = detail::number_of(detail::member(j, "mean_speed_kph"), "mean_speed_kph");
  s.acc_on_percent = detail::number_of(detail::member(j, "acc_on_percent"), "acc_on_percent");
  s.safety_index = metric_triple_from_json(j, "safety_index");
  s.fuel_index = metric_triple_from_json(j, "fuel_index");
  s.fuel_efficiency_kmpl = metric_triple_from_json(j, "fuel_efficiency_kmpl");
  s.comfort_index = metric_triple_from_json(j, "comfort_index");
  const auto & version = detail::member(j, "schema_version");
  if (!version.is_number_integer()) {
    detail::malformed("schema_version must be an integer");
  }
  s.schema_version = version.get<int>();
  return s;
}

/// The canonical byte form of a summary, shared by the store, CLI and service.
inline std::string to_canonical_json(const RideSummary & s) { return to_json(s).dump(2) + "\n"; }

inline Json to_json(const std::optional<SafetyZoning> & z)
{
  if (!z) {
    return nullptr;
  }
  return Json{
    {"alert_fraction", z->alert_fraction},
    {"attention_fraction", z->attention_fraction},
    {"safe_fraction", z->safe_fraction},
    {"safety_index", z->safety_index},
    {"alert_samples", z->alert_samples},
    {"attention_samples", z->attention_samples},
    {"safe_samples", z->safe_samples},
    {"considered_samples", z->considered_samples}};
}

inline std::optional<SafetyZoning> zoning_from_json(const Json & j)
{
  if (j.is_null()) {
    return std::nullopt;
  }
  SafetyZoning z;
  z.alert_fraction = detail::number_of(detail::member(j, "alert_fraction"), "alert_fraction");
  z.attention_fraction =
    detail::number_of(detail::member(j, "attention_fraction"), "attention_fraction");
  z.safe_fraction = detail::number_of(detail::member(j, "safe_fraction"), "safe_fraction");
  z.safety_index = detail::number_of(detail::member(j, "safety_index"), "safety_index");
  z.alert_samples = detail::member(j, "alert_samples").get<std::size_t>();
  z.attention_samples = detail::member(j, "attention_samples").get<std::size_t>();
  z.safe_samples = detail::member(j, "safe_samples").get<std::size_t>();
  z.considered_samples = detail::member(j, "considered_samples").get<std::size_t>();
  return z;
}

/// Sample stride that keeps a series of `n` points within `max_points`.
inline std::size_t transport_stride(std::size_t n, std::size_t max_points = kMaxTransportPoints)
{
  return n <= max_points ? 1 : (n + max_points - 1) / max_points;
}

/**
 * @brief Diagnostics document. With stride > 1 every series keeps samples
 * 0, stride, 2*stride, ...; zoning is always the full-resolution result.
 */
inline Json to_json(const TripDiagnostics & d, std::size_t stride = 1)
{
  stride = std::max<std::size_t>(stride, 1);
  Json t = Json::array();
  Json speed = Json::array();
  Json accel = Json::array();
  Json jerk = Json::array();
  Json cruise = Json::array();
  Json distance = Json::array();
  Json headway = Json::array();
  Json zone = Json::array();
  Json ttc = Json::array();
  Json fcr_series = Json::array();
  Json violation = Json::array();
  for (std::size_t i = 0; i < d.size(); i += stride) {
    t.push_back(d.time_at(i));
    speed.push_back(d.speed[i]);
    accel.push_back(d.accel[i]);
    jerk.push_back(d.jerk[i]);
    cruise.push_back(d.cruise_on[i] ? 1 : 0);
    distance.push_back(d.distance_km[i]);
    headway.push_back(detail::series_number(d.headway[i]));
    zone.push_back(d.zone[i] ? Json(std::string(to_string(*d.zone[i]))) : Json(nullptr));
    ttc.push_back(detail::series_number(d.ttc[i]));
    fcr_series.push_back(d.fcr[i]);
    violation.push_back(d.violation[i] ? 1 : 0);
  }
  return Json{
    {"rate_hz", d.rate_hz},
    {"t0", d.t0},
    {"samples", d.size()},
    {"stride", stride},
    {"zoning",
     Json{{"on", to_json(d.zoning.on)}, {"off", to_json(d.zoning.off)}, {"all", to_json(d.zoning.all)}}},
    {"series",
     Json{
       {"t", std::move(t)},
       {"speed", std::move(speed)},
       {"accel", std::move(accel)},
       {"jerk", std::move(jerk)},
       {"cruise_on", std::move(cruise)},
       {"distance_km", std::move(distance)},
       {"headway", std::move(headway)},
       {"zone", std::move(zone)},
       {"ttc", std::move(ttc)},
       {"fcr", std::move(fcr_series)},
       {"violation", std::move(violation)}}}};
}

/// Inverse of to_json(diagnostics) for full-resolution (stride 1) documents.
inline TripDiagnostics diagnostics_from_json(const Json & j)
{
  if (detail::member(j, "stride").get<std::size_t>() != 1) {
    detail::malformed("diagnostics must be full resolution");
  }
  TripDiagnostics d;
  d.rate_hz = detail::number_of(detail::member(j, "rate_hz"), "rate_hz");
  d.t0 = detail::number_of(detail::member(j, "t0"), "t0");
  const auto n = detail::member(j, "samples").get<std::size_t>();
  const auto & z = detail::member(j, "zoning");
  d.zoning.on = zoning_from_json(detail::member(z, "on"));
  d.zoning.off = zoning_from_json(detail::member(z, "off"));
  d.zoning.all = zoning_from_json(detail::member(z, "all"));

  const auto & series = detail::member(j, "series");
  auto column = [&](const char * name) -> const Json & {
    const auto & c = detail::member(series, name);
    if (!c.is_array() || c.size() != n) {
      detail::malformed(std::string("series '") + name + "' has the wrong length");
    }
    return c;
  };
  const auto & speed = column("speed");
  const auto & accel = column("accel");
  const auto & jerk = column("jerk");
  const auto & cruise = column("cruise_on");
  const auto & distance = column("distance_km");
  const auto & headway = column("headway");
  const auto & zone = column("zone");
  const auto & ttc = column("ttc");
  const auto & fcr_series = column("fcr");
  const auto & violation = column("violation");
  for (std::size_t i = 0; i < n; ++i) {
    d.speed.push_back(detail::number_of(speed[i], "speed"));
    d.accel.push_back(detail::number_of(accel[i], "accel"));
    d.jerk.push_back(detail::number_of(jerk[i], "jerk"));
    d.cruise_on.push_back(cruise[i].get<int>() != 0);
    d.distance_km.push_back(detail::number_of(distance[i], "distance_km"));
    d.headway.push_back(detail::series_value_of(headway[i]));
    if (zone[i].is_null()) {
      d.zone.emplace_back();
    } else {
      const auto name = zone[i].get<std::string>();
      if (name == "alert") {
        d.zone.emplace_back(Zone::kAlert);
      } else if (name == "attention") {
        d.zone.emplace_back(Zone::kAttention);
      } else if (name == "safe") {
        d.zone.emplace_back(Zone::kSafe);
      } else {
        detail::malformed("unknown zone '" + name + "'");
      }
    }
    d.ttc.push_back(detail::series_value_of(ttc[i]));
    d.fcr.push_back(detail::number_of(fcr_series[i], "fcr"));
    d.violation.push_back(violation[i].get<int>() != 0);
  }
  return d;
}

inline Json to_json(const MetricValues & values)
{
  Json out = Json::object();
  for (std::size_t k = 0; k < values.size(); ++k) {
    out[std::string(kMetricNames[k])] = detail::optional_number(values[k]);
  }
  return out;
}

inline Json to_json(const ComparisonReport & r)
{
  Json window_ids = Json::array();
  for (const auto & id : r.window_ride_ids) {
    window_ids.push_back(id);
  }
  return Json{
    {"recent", to_json(r.recent)},
    {"previous", r.previous ? to_json(*r.previous) : Json(nullptr)},
    {"window", r.window},
    {"window_ride_ids", std::move(window_ids)},
    {"rolling_avg", to_json(r.rolling_avg)},
    {"change_to_avg", to_json(r.change_to_avg)},
    {"change_to_prev", r.previous ? to_json(r.change_to_prev) : Json(nullptr)}};
}

inline Json to_json(const TrendSeries & series)
{
  Json points = Json::array();
  for (const auto & p : series.points) {
    points.push_back(
      Json{{"ordinal", p.ordinal}, {"started_at", p.started_at}, {"value", detail::optional_number(p.value)}});
  }
  return Json{{"metric_name", series.metric_name}, {"points", std::move(points)}};
}

}  // namespace drivefit

#endif  // DRIVEFIT__JSON_CODEC_HPP_
