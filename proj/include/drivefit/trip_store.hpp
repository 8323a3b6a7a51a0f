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

#ifndef DRIVEFIT__TRIP_STORE_HPP_
#define DRIVEFIT__TRIP_STORE_HPP_

#include "drivefit/comparison.hpp"
#include "drivefit/error.hpp"
#include "drivefit/json_codec.hpp"
#include "drivefit/ride_summary.hpp"
#include "drivefit/trip_analysis.hpp"

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace drivefit
{

/// Ride ids double as file names: [A-Za-z0-9][A-Za-z0-9._-]*, at most 128 chars.
inline bool is_valid_ride_id(std::string_view id)
{
  if (id.empty() || id.size() > 128) {
    return false;
  }
  auto alnum = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
  };
  if (!alnum(id.front())) {
    return false;
  }
  return std::all_of(id.begin(), id.end(), [&](char c) {
    return alnum(c) || c == '.' || c == '_' || c == '-';
  });
}

/**
 * @brief Append-only store of ride summaries and their diagnostics.
 *
 * Directory layout:
 *   manifest.json              ordered {ride_id, started_at} list + schema_version
 *   rides/<ride_id>.json       canonical RideSummary
 *   diagnostics/<ride_id>.json full-resolution diagnostics
 * A path ending in ".json" (or naming an existing regular file) selects the
 * single-file layout, where one document holds every ride.
 *
 * One process writes; every file replacement goes through rename so that
 * concurrent readers see either the old or the new state.
 */
class TripStore
{
public:
  enum class Layout { kDirectory, kSingleFile };

  explicit TripStore(std::filesystem::path root) : root_(std::move(root))
  {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (fs::is_regular_file(root_, ec) || (!fs::exists(root_, ec) && root_.extension() == ".json")) {
      layout_ = Layout::kSingleFile;
    }
    load();
  }

  TripStore(const TripStore &) = delete;
  TripStore & operator=(const TripStore &) = delete;

  Layout layout() const noexcept { return layout_; }
  const std::filesystem::path & root() const noexcept { return root_; }

  /// Appends a ride and returns its 0-based insertion ordinal.
  std::size_t store_ride(
    const RideSummary & summary, const std::optional<TripDiagnostics> & diagnostics = std::nullopt)
  {
    if (!is_valid_ride_id(summary.ride_id)) {
      throw Error(ErrorCode::kInvalidArgument, "invalid ride id '" + summary.ride_id + "'");
    }
    std::unique_lock lock(mutex_);
    if (index_of(summary.ride_id)) {
      throw Error(ErrorCode::kDuplicateRideId, "ride '" + summary.ride_id + "' already stored");
    }
    if (layout_ == Layout::kDirectory) {
      if (diagnostics) {
        write_atomically(diagnostics_path(summary.ride_id), to_json(*diagnostics).dump() + "\n");
      }
      write_atomically(ride_path(summary.ride_id), to_canonical_json(summary));
      // Directory mode keeps diagnostics on disk only.
      entries_.push_back({summary, std::nullopt, diagnostics.has_value()});
      try {
        write_atomically(root_ / "manifest.json", manifest_text_locked());
      } catch (...) {
        entries_.pop_back();
        throw;
      }
    } else {
      entries_.push_back({summary, diagnostics, diagnostics.has_value()});
      try {
        write_atomically(root_, single_file_text_locked());
      } catch (...) {
        entries_.pop_back();
        throw;
      }
    }
    return entries_.size() - 1;
  }

  std::size_t size() const
  {
    std::shared_lock lock(mutex_);
    return entries_.size();
  }

  /// Summaries in insertion order.
  std::vector<RideSummary> rides() const
  {
    std::shared_lock lock(mutex_);
    std::vector<RideSummary> out;
    out.reserve(entries_.size());
    for (const auto & e : entries_) {
      out.push_back(e.summary);
    }
    return out;
  }

  std::vector<RideSummary> chronological_rides() const { return chronological(rides()); }

  std::optional<RideSummary> find(std::string_view ride_id) const
  {
    std::shared_lock lock(mutex_);
    const auto i = index_of(ride_id);
    if (!i) {
      return std::nullopt;
    }
    return entries_[*i].summary;
  }

  std::optional<TripDiagnostics> diagnostics(std::string_view ride_id) const
  {
    std::shared_lock lock(mutex_);
    const auto i = index_of(ride_id);
    if (!i || !entries_[*i].has_diagnostics) {
      return std::nullopt;
    }
    if (layout_ == Layout::kSingleFile) {
      return entries_[*i].diagnostics;
    }
    return diagnostics_from_json(parse_file(diagnostics_path(std::string(ride_id))));
  }

  /// Every per-state fuel efficiency value of every stored ride.
  std::vector<double> fuel_efficiency_population() const
  {
    std::shared_lock lock(mutex_);
    std::vector<double> out;
    for (const auto & e : entries_) {
      const auto & fe = e.summary.fuel_efficiency_kmpl;
      for (const auto & v : {fe.on, fe.off, fe.all}) {
        if (v) {
          out.push_back(*v);
        }
      }
    }
    return out;
  }

  std::string manifest_text() const
  {
    std::shared_lock lock(mutex_);
    return manifest_text_locked();
  }

private:
  struct Entry
  {
    RideSummary summary;
    std::optional<TripDiagnostics> diagnostics;
    bool has_diagnostics = false;
  };

  std::filesystem::path ride_path(const std::string & id) const
  {
    return root_ / "rides" / (id + ".json");
  }

  std::filesystem::path diagnostics_path(const std::string & id) const
  {
    return root_ / "diagnostics" / (id + ".json");
  }

  std::optional<std::size_t> index_of(std::string_view id) const
  {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (entries_[i].summary.ride_id == id) {
        return i;
      }
    }
    return std::nullopt;
  }

  std::string manifest_text_locked() const
  {
    Json rides = Json::array();
    for (const auto & e : entries_) {
      rides.push_back(Json{{"ride_id", e.summary.ride_id}, {"started_at", e.summary.started_at}});
    }
    return Json{{"schema_version", kSchemaVersion}, {"rides", std::move(rides)}}.dump(2) + "\n";
  }

  std::string single_file_text_locked() const
  {
    Json rides = Json::array();
    for (const auto & e : entries_) {
      rides.push_back(
        Json{{"summary", to_json(e.summary)},
             {"diagnostics", e.diagnostics ? to_json(*e.diagnostics) : Json(nullptr)}});
    }
    return Json{{"schema_version", kSchemaVersion}, {"rides", std::move(rides)}}.dump() + "\n";
  }

  static Json parse_file(const std::filesystem::path & path)
  {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw Error(ErrorCode::kStorageFailure, "cannot read " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    try {
      return Json::parse(buf.str());
    } catch (const nlohmann::json::exception & e) {
      throw Error(ErrorCode::kStorageFailure, path.string() + ": " + e.what());
    }
  }

  static void write_atomically(const std::filesystem::path & path, const std::string & text)
  {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (path.has_parent_path()) {
      fs::create_directories(path.parent_path(), ec);
      if (ec) {
        throw Error(ErrorCode::kStorageFailure, "cannot create " + path.parent_path().string());
      }
    }
    auto tmp = path;
    tmp += ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out << text;
      out.flush();
      if (!out) {
        throw Error(ErrorCode::kStorageFailure, "cannot write " + tmp.string());
      }
    }
    fs::rename(tmp, path, ec);
    if (ec) {
      throw Error(ErrorCode::kStorageFailure, "cannot replace " + path.string() + ": " + ec.message());
    }
  }

  void load()
  {
    namespace fs = std::filesystem;
    std::error_code ec;
    try {
      if (layout_ == Layout::kSingleFile) {
        if (!fs::exists(root_, ec)) {
          return;
        }
        const auto doc = parse_file(root_);
        for (const auto & r : detail::member(doc, "rides")) {
          Entry e{ride_summary_from_json(detail::member(r, "summary")), std::nullopt};
          const auto & d = detail::member(r, "diagnostics");
          if (!d.is_null()) {
            e.diagnostics = diagnostics_from_json(d);
            e.has_diagnostics = true;
          }
          entries_.push_back(std::move(e));
        }
        return;
      }
      const auto manifest = root_ / "manifest.json";
      if (!fs::exists(manifest, ec)) {
        if (fs::exists(root_, ec) && !fs::is_directory(root_, ec)) {
          throw Error(ErrorCode::kStorageFailure, root_.string() + " is not a store directory");
        }
        return;
      }
      const auto doc = parse_file(manifest);
      for (const auto & r : detail::member(doc, "rides")) {
        const auto id = detail::member(r, "ride_id").get<std::string>();
        if (!is_valid_ride_id(id)) {
          throw Error(ErrorCode::kStorageFailure, "manifest lists invalid ride id '" + id + "'");
        }
        Entry e{ride_summary_from_json(parse_file(ride_path(id))), std::nullopt};
        e.has_diagnostics = fs::exists(diagnostics_path(id), ec);
        entries_.push_back(std::move(e));
      }
    } catch (const Error & e) {
      if (e.code() == ErrorCode::kStorageFailure) {
        throw;
      }
      throw Error(ErrorCode::kStorageFailure, e.what());
    } catch (const nlohmann::json::exception & e) {
      throw Error(ErrorCode::kStorageFailure, std::string("corrupt store: ") + e.what());
    }
  }

  std::filesystem::path root_;
  Layout layout_ = Layout::kDirectory;
  mutable std::shared_mutex mutex_;
  std::vector<Entry> entries_;
};

inline ComparisonReport comparison_report(
  const TripStore & store, std::string_view ride_id, const ComparisonOptions & options = {})
{
  const auto rides = store.chronological_rides();
  return comparison_report(std::span<const RideSummary>(rides), ride_id, options);
}

inline TrendSeries trend_series(const TripStore & store, std::string_view metric_name)
{
  const auto rides = store.chronological_rides();
  return trend_series(std::span<const RideSummary>(rides), metric_name);
}

}  // namespace drivefit

#endif  // DRIVEFIT__TRIP_STORE_HPP_
