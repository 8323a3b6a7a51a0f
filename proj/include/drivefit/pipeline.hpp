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

#ifndef DRIVEFIT__PIPELINE_HPP_
#define DRIVEFIT__PIPELINE_HPP_

#include "drivefit/config.hpp"
#include "drivefit/error.hpp"
#include "drivefit/signal_ingest.hpp"
#include "drivefit/trip_analysis.hpp"
#include "drivefit/trip_store.hpp"

#include <cmath>
#include <ctime>
#include <iomanip>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>

namespace drivefit
{

/// Seconds since the Unix epoch as "YYYY-MM-DDTHH:MM:SSZ" (fraction truncated).
inline std::string format_utc(double epoch_seconds)
{
  const auto whole = static_cast<std::time_t>(std::floor(epoch_seconds));
  std::tm tm{};
  gmtime_r(&whole, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Accepts "YYYY-MM-DDTHH:MM:SSZ" and returns it unchanged; throws otherwise.
inline std::string validate_utc(std::string_view text)
{
  std::tm tm{};
  std::istringstream in{std::string(text)};
  in >> std::get_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  if (in.fail() || in.peek() != std::char_traits<char>::eof() || text.size() != 20) {
    throw Error(
      ErrorCode::kInvalidArgument,
      "started_at must look like 2024-05-01T08:30:00Z, got '" + std::string(text) + "'");
  }
  return std::string(text);
}

struct RideIdentity
{
  std::string ride_id;
  /// Defaults to the first log timestamp read as Unix time.
  std::optional<std::string> started_at;
};

/// Kinematic trace with accel and jerk filled, ready for analyze_trip().
inline UniformTrace prepare_trace(const TripLog & log, const AnalysisSettings & settings)
{
  return compute_jerk(derive_acceleration(resample(log, settings.rate_hz), settings.acceleration));
}

/// parse -> resample -> derive -> summarize, without touching any store.
inline TripAnalysis analyze_csv(
  std::string_view csv, const RideIdentity & identity, const Settings & settings,
  std::span<const double> fuel_history = {})
{
  if (!is_valid_ride_id(identity.ride_id)) {
    throw Error(ErrorCode::kInvalidArgument, "invalid ride id '" + identity.ride_id + "'");
  }
  const auto log = parse_trip_log(csv, identity.ride_id, settings.parse);
  const auto trace = prepare_trace(log, settings.analysis);
  const auto started_at =
    identity.started_at ? validate_utc(*identity.started_at) : format_utc(log.samples.front().timestamp);
  auto analysis = analyze_trip(trace, settings.analysis, identity.ride_id, started_at, fuel_history);
  analysis.skipped_rows = log.skipped_rows;
  return analysis;
}

/// Analyze against the store's fuel population and append the result.
inline TripAnalysis ingest_csv(
  TripStore & store, std::string_view csv, const RideIdentity & identity, const Settings & settings)
{
  if (store.find(identity.ride_id)) {
    throw Error(ErrorCode::kDuplicateRideId, "ride '" + identity.ride_id + "' already stored");
  }
  auto analysis = analyze_csv(csv, identity, settings, store.fuel_efficiency_population());
  store.store_ride(analysis.summary, analysis.diagnostics);
  return analysis;
}

}  // namespace drivefit

#endif  // DRIVEFIT__PIPELINE_HPP_
