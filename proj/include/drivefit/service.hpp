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

#ifndef DRIVEFIT__SERVICE_HPP_
#define DRIVEFIT__SERVICE_HPP_

#include "drivefit/config.hpp"
#include "drivefit/error.hpp"
#include "drivefit/json_codec.hpp"
#include "drivefit/pipeline.hpp"
#include "drivefit/trip_store.hpp"

#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace drivefit
{

struct ApiResponse
{
  int status = 200;
  std::string body;
  std::string etag;  // quoted; empty for non-cacheable responses
};

/// Quoted 64-bit FNV-1a digest of a response body.
inline std::string make_etag(std::string_view body)
{
  std::uint64_t h = 1469598103934665603ULL;
  for (const char c : body) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out = "\"";
  for (int shift = 60; shift >= 0; shift -= 4) {
    out.push_back(kHex[(h >> shift) & 0xF]);
  }
  out.push_back('"');
  return out;
}

inline int http_status_for(ErrorCode code)
{
  switch (code) {
    case ErrorCode::kRideNotFound:
      return 404;
    case ErrorCode::kDuplicateRideId:
      return 409;
    case ErrorCode::kStorageFailure:
      return 500;
    default:
      return 400;
  }
}

/**
 * @brief Endpoint handlers, independent of the HTTP transport.
 *
 * GET handlers only read the store. ingest() is serialized so the fuel-index
 * population it reads cannot change before its own append.
 */
class Service
{
public:
  Service(TripStore & store, Settings settings) : store_(store), settings_(std::move(settings)) {}

  const Settings & settings() const noexcept { return settings_; }

  /// GET /rides
  ApiResponse list_rides() const
  {
    return guarded([&] {
      Json out = Json::array();
      for (const auto & r : store_.chronological_rides()) {
        out.push_back(Json{
          {"ride_id", r.ride_id},
          {"started_at", r.started_at},
          {"distance_km", r.distance_km},
          {"acc_on_percent", r.acc_on_percent},
          {"safety_index", detail::optional_number(r.safety_index.all)},
          {"fuel_index", detail::optional_number(r.fuel_index.all)},
          {"fuel_efficiency_kmpl", detail::optional_number(r.fuel_efficiency_kmpl.all)},
          {"comfort_index", detail::optional_number(r.comfort_index.all)}});
      }
      return cacheable(out.dump(2) + "\n");
    });
  }

  /// GET /rides/{id}
  ApiResponse get_ride(std::string_view ride_id) const
  {
    return guarded([&] {
      const auto summary = require_ride(ride_id);
      const auto diagnostics = store_.diagnostics(ride_id);
      Json out{
        {"summary", to_json(summary)},
        {"diagnostics",
         diagnostics ? to_json(*diagnostics, transport_stride(diagnostics->size())) : Json(nullptr)}};
      return cacheable(out.dump(2) + "\n");
    });
  }

  /// GET /rides/{id}/comparison?window=N
  ApiResponse comparison(std::string_view ride_id, std::optional<std::string_view> window) const
  {
    return guarded([&] {
      require_ride(ride_id);
      auto options = settings_.comparison;
      if (window) {
        const auto n = detail::parse_number(*window);
        if (!n || *n < 1 || *n != std::floor(*n) || *n > 1000) {
          throw Error(ErrorCode::kInvalidArgument, "window must be an integer in [1, 1000]");
        }
        options.window = static_cast<std::size_t>(*n);
      }
      return cacheable(to_json(comparison_report(store_, ride_id, options)).dump(2) + "\n");
    });
  }

  /// GET /trends?metric=name
  ApiResponse trends(std::optional<std::string_view> metric) const
  {
    if (!metric || !find_metric(*metric)) {
      Json names = Json::array();
      for (const auto n : kMetricNames) {
        names.push_back(std::string(n));
      }
      Json body{
        {"error", std::string(to_string(ErrorCode::kUnknownMetric))},
        {"message", "unknown metric '" + std::string(metric.value_or("")) + "'"},
        {"valid_metrics", std::move(names)}};
      return {400, body.dump(2) + "\n", ""};
    }
    return guarded([&] { return cacheable(to_json(trend_series(store_, *metric)).dump(2) + "\n"); });
  }

  /// POST /ingest
  ApiResponse ingest(
    std::string_view csv, std::string_view ride_id, std::optional<std::string> started_at)
  {
    std::lock_guard lock(ingest_mutex_);
    return guarded([&] {
      const auto analysis =
        ingest_csv(store_, csv, RideIdentity{std::string(ride_id), std::move(started_at)}, settings_);
      return ApiResponse{200, to_canonical_json(analysis.summary), ""};
    });
  }

  static ApiResponse error_response(ErrorCode code, std::string_view message)
  {
    const Json body{{"error", std::string(to_string(code))}, {"message", std::string(message)}};
    return {http_status_for(code), body.dump(2) + "\n", ""};
  }

private:
  RideSummary require_ride(std::string_view ride_id) const
  {
    auto summary = store_.find(ride_id);
    if (!summary) {
      throw Error(ErrorCode::kRideNotFound, "no ride '" + std::string(ride_id) + "'");
    }
    return *summary;
  }

  static ApiResponse cacheable(std::string body)
  {
    auto etag = make_etag(body);
    return {200, std::move(body), std::move(etag)};
  }

  template <class Handler>
  static ApiResponse guarded(Handler && handler)
  {
    try {
      return handler();
    } catch (const Error & e) {
      return error_response(e.code(), e.message());
    } catch (const std::exception & e) {
      return error_response(ErrorCode::kStorageFailure, e.what());
    }
  }

  TripStore & store_;
  Settings settings_;
  std::mutex ingest_mutex_;
};

}  // namespace drivefit

#endif  // DRIVEFIT__SERVICE_HPP_
