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

#ifndef DRIVEFIT__CONFIG_HPP_
#define DRIVEFIT__CONFIG_HPP_

#include "drivefit/comparison.hpp"
#include "drivefit/error.hpp"
#include "drivefit/signal_ingest.hpp"
#include "drivefit/trip_analysis.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <string_view>

namespace drivefit
{

inline constexpr std::string_view kEnvPrefix = "DRIVEFIT_";

/// Everything a CLI run or the service needs; defaults are the published model constants.
struct Settings
{
  std::string bind_address = "127.0.0.1";
  int port = 8080;
  std::filesystem::path store = "drivefit-store";
  AnalysisSettings analysis;
  ParseOptions parse;
  ComparisonOptions comparison;

  /// Throws kInvalidConfig when a value is outside its documented range.
  void validate() const
  {
    auto fail = [](const std::string & why) { throw Error(ErrorCode::kInvalidConfig, why); };
    const auto & a = analysis;
    if (port < 0 || port > 65535) {
      fail("port must lie in [0, 65535]");
    }
    if (!(a.rate_hz >= kMinRateHz && a.rate_hz <= kMaxRateHz)) {
      fail("rate_hz must lie in [1, 100]");
    }
    const auto w = a.acceleration.smoothing_window;
    if (w != 0 && (w % 2 == 0 || w > 101)) {
      fail("accel_smoothing_window must be 0 (off) or odd and at most 101");
    }
    if (!(a.stationary_speed > 0.0 && a.stationary_speed <= 5.0)) {
      fail("v_eps must lie in (0, 5] m/s");
    }
    if (!(a.zones.alert_max > 0.0 && a.zones.alert_max < a.zones.attention_max &&
          a.zones.attention_max <= 10.0)) {
      fail("zone bounds require 0 < zone.alert_max < zone.attention_max <= 10 s");
    }
    if (!(a.comfort.accel_max > 0.0 && a.comfort.accel_max <= 10.0)) {
      fail("a_hi must lie in (0, 10] m/s^2");
    }
    if (!(a.comfort.accel_min < 0.0 && a.comfort.accel_min >= -10.0)) {
      fail("a_lo must lie in [-10, 0) m/s^2");
    }
    if (!(a.comfort.jerk_abs > 0.0 && a.comfort.jerk_abs <= 50.0)) {
      fail("j_abs must lie in (0, 50] m/s^3");
    }
    a.fuel.validate();
    if (comparison.window < 1 || comparison.window > 1000) {
      fail("window must lie in [1, 1000]");
    }
  }
};

namespace detail
{

inline double config_number(std::string_view key, std::string_view value)
{
  const auto v = parse_number(trim(value));
  if (!v) {
    throw Error(
      ErrorCode::kInvalidConfig,
      "'" + std::string(key) + "' expects a number, got '" + std::string(value) + "'");
  }
  return *v;
}

inline long config_integer(std::string_view key, std::string_view value)
{
  value = trim(value);
  long out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw Error(
      ErrorCode::kInvalidConfig,
      "'" + std::string(key) + "' expects an integer, got '" + std::string(value) + "'");
  }
  return out;
}

inline bool config_bool(std::string_view key, std::string_view value)
{
  value = trim(value);
  if (value == "true" || value == "1" || value == "yes" || value == "on") {
    return true;
  }
  if (value == "false" || value == "0" || value == "no" || value == "off") {
    return false;
  }
  throw Error(
    ErrorCode::kInvalidConfig,
    "'" + std::string(key) + "' expects true/false, got '" + std::string(value) + "'");
}

struct SettingKey
{
  std::string_view name;
  std::string_view help;
  void (*apply)(Settings &, std::string_view key, std::string_view value);
};

// clang-format off
inline constexpr std::array<SettingKey, 19> kSettingKeys = {{
  {"store", "ride store directory, or a .json file for the single-file layout",
   [](Settings & s, std::string_view, std::string_view v) { s.store = std::string(trim(v)); }},
  {"bind_address", "service bind address",
   [](Settings & s, std::string_view, std::string_view v) { s.bind_address = std::string(trim(v)); }},
  {"port", "service port",
   [](Settings & s, std::string_view k, std::string_view v) { s.port = static_cast<int>(config_integer(k, v)); }},
  {"rate_hz", "resample rate [Hz], 1..100",
   [](Settings & s, std::string_view k, std::string_view v) { s.analysis.rate_hz = config_number(k, v); }},
  {"accel_smoothing_window", "moving-average window on accel; 0 = off, else odd (5 recommended)",
   [](Settings & s, std::string_view k, std::string_view v) {
     const auto w = config_integer(k, v);
     if (w < 0) {
       throw Error(ErrorCode::kInvalidConfig, "accel_smoothing_window must be >= 0");
     }
     s.analysis.acceleration.smoothing_window = static_cast<std::size_t>(w);
   }},
  {"v_eps", "ego speed [m/s] below which headway is infinite",
   [](Settings & s, std::string_view k, std::string_view v) { s.analysis.stationary_speed = config_number(k, v); }},
  {"zone.alert_max", "upper headway bound [s] of the alert zone",
   [](Settings & s, std::string_view k, std::string_view v) { s.analysis.zones.alert_max = config_number(k, v); }},
  {"zone.attention_max", "upper headway bound [s] of the attention zone",
   [](Settings & s, std::string_view k, std::string_view v) { s.analysis.zones.attention_max = config_number(k, v); }},
  {"no_lead", "samples without a lead vehicle: exclude | safe",
   [](Settings & s, std::string_view, std::string_view v) {
     v = trim(v);
     if (v == "exclude") {
       s.analysis.no_lead = NoLeadPolicy::kExclude;
     } else if (v == "safe") {
       s.analysis.no_lead = NoLeadPolicy::kSafe;
     } else {
       throw Error(ErrorCode::kInvalidConfig, "no_lead must be 'exclude' or 'safe'");
     }
   }},
  {"a_hi", "comfort upper acceleration limit [m/s^2]",
   [](Settings & s, std::string_view k, std::string_view v) { s.analysis.comfort.accel_max = config_number(k, v); }},
  {"a_lo", "comfort lower acceleration limit [m/s^2]",
   [](Settings & s, std::string_view k, std::string_view v) { s.analysis.comfort.accel_min = config_number(k, v); }},
  {"j_abs", "comfort absolute jerk limit [m/s^3]",
   [](Settings & s, std::string_view k, std::string_view v) { s.analysis.comfort.jerk_abs = config_number(k, v); }},
  {"fuel.a", "idle consumption [L/100km]",
   [](Settings & s, std::string_view k, std::string_view v) { s.analysis.fuel.idle = config_number(k, v); }},
  {"fuel.b", "rolling term [L/100km per kph]",
   [](Settings & s, std::string_view k, std::string_view v) { s.analysis.fuel.rolling = config_number(k, v); }},
  {"fuel.c", "aerodynamic term [L/100km per kph^2]",
   [](Settings & s, std::string_view k, std::string_view v) { s.analysis.fuel.aero = config_number(k, v); }},
  {"fuel.d", "acceleration term [L/100km per m/s^2]",
   [](Settings & s, std::string_view k, std::string_view v) { s.analysis.fuel.accel_effect = config_number(k, v); }},
  {"window", "rides in the comparison rolling average",
   [](Settings & s, std::string_view k, std::string_view v) {
     const auto n = config_integer(k, v);
     if (n < 1) {
       throw Error(ErrorCode::kInvalidConfig, "window must be >= 1");
     }
     s.comparison.window = static_cast<std::size_t>(n);
   }},
  {"window_includes_recent", "include the compared ride in its own rolling average",
   [](Settings & s, std::string_view k, std::string_view v) { s.comparison.window_includes_recent = config_bool(k, v); }},
  {"skip_bad_rows", "count and skip unparsable CSV rows instead of rejecting the log",
   [](Settings & s, std::string_view k, std::string_view v) {
     s.parse.bad_rows = config_bool(k, v) ? BadRowPolicy::kSkip : BadRowPolicy::kReject;
   }},
}};
// clang-format on

inline std::string env_name(std::string_view key)
{
  std::string out(kEnvPrefix);
  for (const char c : key) {
    out.push_back(c == '.' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  return out;
}

}  // namespace detail

inline void apply_setting(Settings & settings, std::string_view key, std::string_view value)
{
  key = detail::trim(key);
  for (const auto & k : detail::kSettingKeys) {
    if (k.name == key) {
      k.apply(settings, key, value);
      return;
    }
  }
  throw Error(ErrorCode::kInvalidConfig, "unknown setting '" + std::string(key) + "'");
}

/// `key = value` lines; `#` starts a comment; blank lines are ignored.
inline void apply_config_text(Settings & settings, std::string_view text, std::string_view origin = "config")
{
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = detail::trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(
        ErrorCode::kInvalidConfig,
        std::string(origin) + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    try {
      apply_setting(settings, line.substr(0, eq), line.substr(eq + 1));
    } catch (const Error & e) {
      throw Error(
        ErrorCode::kInvalidConfig, std::string(origin) + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

inline void apply_config_file(Settings & settings, const std::filesystem::path & path)
{
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kInvalidConfig, "cannot read config file " + path.string());
  }
  std::stringstream buf;
  buf << in.rdbuf();
  apply_config_text(settings, buf.str(), path.string());
}

/// Applies DRIVEFIT_<KEY> variables, e.g. DRIVEFIT_FUEL_A or DRIVEFIT_ZONE_ALERT_MAX.
inline void apply_environment(
  Settings & settings,
  const std::function<const char *(const char *)> & lookup = [](const char * n) { return std::getenv(n); })
{
  for (const auto & k : detail::kSettingKeys) {
    const auto name = detail::env_name(k.name);
    if (const char * value = lookup(name.c_str())) {
      try {
        k.apply(settings, k.name, value);
      } catch (const Error & e) {
        throw Error(ErrorCode::kInvalidConfig, name + ": " + e.what());
      }
    }
  }
}

/// Comma-separated `key=value` overrides; `prefix` is prepended to bare keys
/// (so `--params a=5,d=0.1` addresses fuel.a and fuel.d).
inline void apply_assignments(Settings & settings, std::string_view list, std::string_view prefix = "")
{
  std::size_t pos = 0;
  while (pos <= list.size()) {
    const auto comma = list.find(',', pos);
    auto item = detail::trim(
      list.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    pos = comma == std::string_view::npos ? list.size() + 1 : comma + 1;
    if (item.empty()) {
      continue;
    }
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kInvalidConfig, "expected key=value, got '" + std::string(item) + "'");
    }
    const auto key = detail::trim(item.substr(0, eq));
    std::string full(key);
    if (!prefix.empty() && key.find('.') == std::string_view::npos) {
      full = std::string(prefix) + full;
    }
    apply_setting(settings, full, item.substr(eq + 1));
  }
}

}  // namespace drivefit

#endif  // DRIVEFIT__CONFIG_HPP_
