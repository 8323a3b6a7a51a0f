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

#ifndef DRIVEFIT__HTTP_SERVER_HPP_
#define DRIVEFIT__HTTP_SERVER_HPP_

#include "drivefit/service.hpp"

// Raw CSV bodies posted without a content type arrive as form-urlencoded;
// lift the small default cap on those bodies.
#ifndef CPPHTTPLIB_FORM_URL_ENCODED_PAYLOAD_MAX_LENGTH
#define CPPHTTPLIB_FORM_URL_ENCODED_PAYLOAD_MAX_LENGTH (std::size_t{1} << 30)
#endif
#include <httplib.h>

#include <optional>
#include <string>

namespace drivefit
{

namespace detail
{

inline void send(const httplib::Request & req, httplib::Response & res, const ApiResponse & api)
{
  if (!api.etag.empty()) {
    res.set_header("ETag", api.etag);
    res.set_header("Cache-Control", "no-cache");
    if (req.get_header_value("If-None-Match") == api.etag) {
      res.status = 304;
      return;
    }
  }
  res.status = api.status;
  res.set_content(api.body, "application/json");
}

inline std::optional<std::string> param(const httplib::Request & req, const char * key)
{
  if (req.has_param(key)) {
    return req.get_param_value(key);
  }
  if (req.is_multipart_form_data() && req.has_file(key)) {
    return req.get_file_value(key).content;
  }
  return std::nullopt;
}

}  // namespace detail

/// Routes every endpoint of `service` on `server`.
inline void register_routes(httplib::Server & server, Service & service)
{
  server.Get("/rides", [&](const httplib::Request & req, httplib::Response & res) {
    detail::send(req, res, service.list_rides());
  });
  server.Get(R"(/rides/([^/]+)/comparison)", [&](const httplib::Request & req, httplib::Response & res) {
    std::optional<std::string> window;
    if (req.has_param("window")) {
      window = req.get_param_value("window");
    }
    detail::send(req, res, service.comparison(req.matches[1].str(), window));
  });
  server.Get(R"(/rides/([^/]+))", [&](const httplib::Request & req, httplib::Response & res) {
    detail::send(req, res, service.get_ride(req.matches[1].str()));
  });
  server.Get("/trends", [&](const httplib::Request & req, httplib::Response & res) {
    std::optional<std::string> metric;
    if (req.has_param("metric")) {
      metric = req.get_param_value("metric");
    }
    detail::send(req, res, service.trends(metric));
  });
  server.Post("/ingest", [&](const httplib::Request & req, httplib::Response & res) {
    const auto ride_id = detail::param(req, "ride_id");
    if (!ride_id) {
      detail::send(req, res, Service::error_response(ErrorCode::kInvalidArgument, "ride_id is required"));
      return;
    }
    std::string csv;
    if (req.is_multipart_form_data()) {
      if (!req.has_file("file")) {
        detail::send(
          req, res, Service::error_response(ErrorCode::kInvalidArgument, "multipart body needs a 'file' part"));
        return;
      }
      csv = req.get_file_value("file").content;
    } else {
      csv = req.body;
    }
    detail::send(req, res, service.ingest(csv, *ride_id, detail::param(req, "started_at")));
  });
}

}  // namespace drivefit

#endif  // DRIVEFIT__HTTP_SERVER_HPP_
