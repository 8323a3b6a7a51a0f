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

#ifndef DRIVEFIT__REPORT_HPP_
#define DRIVEFIT__REPORT_HPP_

#include "drivefit/comparison.hpp"
#include "drivefit/error.hpp"
#include "drivefit/ride_summary.hpp"
#include "drivefit/trip_analysis.hpp"

#include <fmt/format.h>

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace drivefit
{

inline constexpr std::string_view kAbsentCell = "—";

/// One-decimal display form; absent renders as an em dash.
inline std::string display_value(const std::optional<double> & v)
{
  if (!v) {
    return std::string(kAbsentCell);
  }
  auto text = fmt::format("{:.1f}", *v);
  if (text == "-0.0") {
    text = "0.0";
  }
  return text;
}

namespace detail
{

// MetricValues slots in Table I column order, ACC ON % last.
inline constexpr std::array<std::size_t, 13> kTableColumns = {4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 3};

inline std::size_t display_width(std::string_view s)
{
  std::size_t w = 0;
  for (const char c : s) {
    w += (static_cast<unsigned char>(c) & 0xC0) != 0x80 ? 1 : 0;
  }
  return w;
}

inline std::string pad_left(std::string_view s, std::size_t width)
{
  const auto w = display_width(s);
  return std::string(w < width ? width - w : 0, ' ') + std::string(s);
}

inline std::string pad_right(std::string_view s, std::size_t width)
{
  const auto w = display_width(s);
  return std::string(s) + std::string(w < width ? width - w : 0, ' ');
}

}  // namespace detail

struct TableRow
{
  std::string label;
  MetricValues values;
};

/// Text table with the Safety / Fuel index / Fuel efficiency / Comfort / ACC ON % columns.
inline std::string render_metric_table(std::span<const TableRow> rows)
{
  constexpr std::size_t kCell = 8;
  std::size_t label_width = 4;
  for (const auto & r : rows) {
    label_width = std::max(label_width, detail::display_width(r.label));
  }
  const std::array<std::string_view, 4> groups = {
    "Safety Index (%)", "Fuel Effic. Index (%)", "Fuel Effic. (km/L)", "Comfort Index (%)"};

  std::string out = detail::pad_right("", label_width);
  for (const auto g : groups) {
    out += " |" + detail::pad_right(" " + std::string(g), 3 * kCell);
  }
  out += " | ACC ON %\n";
  out += detail::pad_right("", label_width);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    out += " |" + detail::pad_left("ON", kCell) + detail::pad_left("OFF", kCell) +
           detail::pad_left("All", kCell);
  }
  out += " |\n";
  out += std::string(label_width + groups.size() * (3 * kCell + 2) + 11, '-') + "\n";
  for (const auto & r : rows) {
    out += detail::pad_right(r.label, label_width);
    for (std::size_t c = 0; c < detail::kTableColumns.size(); ++c) {
      if (c % 3 == 0) {
        out += " |";
      }
      out += detail::pad_left(display_value(r.values[detail::kTableColumns[c]]), kCell);
    }
    out += "\n";
  }
  return out;
}

/// Key figures (how long, how far, how fast) followed by the metric table.
inline std::string render_summary_table(const RideSummary & s)
{
  std::string out;
  out += fmt::format("Ride        {}\n", s.ride_id);
  out += fmt::format("Started     {}\n", s.started_at);
  out += fmt::format("Duration    {} s\n", display_value(s.duration_s));
  out += fmt::format("Distance    {} km\n", display_value(s.distance_km));
  out += fmt::format("Mean speed  {} kph\n", display_value(s.mean_speed_kph));
  out += fmt::format("ACC ON %    {}\n\n", display_value(s.acc_on_percent));
  const std::array<TableRow, 1> rows = {TableRow{"This ride", metric_values(s)}};
  out += render_metric_table(rows);
  return out;
}

inline std::string render_comparison_table(const ComparisonReport & r)
{
  MetricValues none;
  const std::array<TableRow, 5> rows = {
    TableRow{fmt::format("Avg. of nearest {} rides", r.window), r.rolling_avg},
    TableRow{"Previous ride", r.previous ? metric_values(*r.previous) : none},
    TableRow{"Recent ride", metric_values(r.recent)},
    TableRow{"Change rate (to avg.)", r.change_to_avg},
    TableRow{"Change rate (to prev.)", r.previous ? r.change_to_prev : none},
  };
  return fmt::format("Comparison for ride {}\n\n", r.recent.ride_id) + render_metric_table(rows);
}

inline std::string render_trend_table(const TrendSeries & series)
{
  std::string out = fmt::format("Trend of {}\n\n", series.metric_name);
  out += fmt::format("{:>4}  {:<20}  {:>10}\n", "#", "started_at", "value");
  for (const auto & p : series.points) {
    out += fmt::format(
      "{:>4}  {:<20}  {}\n", p.ordinal, p.started_at, detail::pad_left(display_value(p.value), 10));
  }
  return out;
}

// --- CSV export ----------------------------------------------------------

enum class StateFilter { kAll, kOn, kOff };

enum class ExportSeries { kHeadway, kFuel, kComfort };

inline std::string csv_number(double v)
{
  if (std::isinf(v)) {
    return v > 0 ? "inf" : "-inf";
  }
  return fmt::format("{}", v);
}

inline std::string csv_number(const std::optional<double> & v) { return v ? csv_number(*v) : ""; }

inline std::string_view export_header(ExportSeries what)
{
  switch (what) {
    case ExportSeries::kHeadway:
      return "t,headway,zone,cruise_on";
    case ExportSeries::kFuel:
      return "t,speed_kph,accel,fcr,distance_km,cruise_on";
    case ExportSeries::kComfort:
      return "t,accel,jerk,violation,cruise_on";
  }
  return "";
}

struct ExportResult
{
  std::string csv;
  std::size_t rows = 0;
};

/// Full-precision per-sample series of one ride, restricted to a cruise state.
inline ExportResult export_series(const TripDiagnostics & d, ExportSeries what, StateFilter state)
{
  ExportResult out;
  out.csv = std::string(export_header(what)) + "\n";
  for (std::size_t i = 0; i < d.size(); ++i) {
    const bool cruise = d.cruise_on[i];
    if ((state == StateFilter::kOn && !cruise) || (state == StateFilter::kOff && cruise)) {
      continue;
    }
    const auto t = csv_number(d.time_at(i));
    const char * c = cruise ? "1" : "0";
    switch (what) {
      case ExportSeries::kHeadway:
        out.csv += fmt::format(
          "{},{},{},{}\n", t, csv_number(d.headway[i]), d.zone[i] ? to_string(*d.zone[i]) : "", c);
        break;
      case ExportSeries::kFuel:
        out.csv += fmt::format(
          "{},{},{},{},{},{}\n", t, csv_number(d.speed[i] * kMpsToKph), csv_number(d.accel[i]),
          csv_number(d.fcr[i]), csv_number(d.distance_km[i]), c);
        break;
      case ExportSeries::kComfort:
        out.csv += fmt::format(
          "{},{},{},{},{}\n", t, csv_number(d.accel[i]), csv_number(d.jerk[i]),
          d.violation[i] ? 1 : 0, c);
        break;
    }
    ++out.rows;
  }
  return out;
}

/// Every metric slot of every ride, chronological; one row per ride.
inline ExportResult export_trends(std::span<const RideSummary> chronological_rides)
{
  ExportResult out;
  out.csv = "ordinal,ride_id,started_at";
  for (const auto name : kMetricNames) {
    out.csv += ",";
    out.csv += name;
  }
  out.csv += "\n";
  for (std::size_t i = 0; i < chronological_rides.size(); ++i) {
    const auto & r = chronological_rides[i];
    out.csv += fmt::format("{},{},{}", i + 1, r.ride_id, r.started_at);
    for (const auto & v : metric_values(r)) {
      out.csv += "," + csv_number(v);
    }
    out.csv += "\n";
    ++out.rows;
  }
  return out;
}

}  // namespace drivefit

#endif  // DRIVEFIT__REPORT_HPP_
