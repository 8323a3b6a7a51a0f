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

// drivefit: ingest trip logs, print summaries/comparisons/trends, export
// plot-ready series and run the local HTTP service.
//
// Exit codes: 0 success, 1 input error, 2 internal error.

#include "drivefit/drivefit.hpp"
#include "drivefit/http_server.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace
{

constexpr int kExitInput = 1;
constexpr int kExitInternal = 2;

struct GlobalOptions
{
  std::optional<std::string> store;
  std::optional<std::string> config;
  std::vector<std::string> params;
  std::vector<std::string> thresholds;
  bool skip_bad_rows = false;
  std::optional<double> rate_hz;
};

std::string read_file(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw drivefit::Error(drivefit::ErrorCode::kInvalidArgument, "cannot read " + path.string());
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void report_skipped(const std::string & file, const drivefit::TripAnalysis & analysis)
{
  if (analysis.skipped_rows > 0) {
    std::cerr << "warning: " << file << ": skipped " << analysis.skipped_rows << " bad row(s)\n";
  }
}

// Precedence: flags > environment > config file > built-in defaults.
drivefit::Settings resolve_settings(const GlobalOptions & g)
{
  drivefit::Settings s;
  std::optional<std::string> config = g.config;
  if (!config) {
    if (const char * env = std::getenv("DRIVEFIT_CONFIG")) {
      config = env;
    }
  }
  if (config) {
    drivefit::apply_config_file(s, *config);
  }
  drivefit::apply_environment(s);
  if (g.store) {
    s.store = *g.store;
  }
  for (const auto & p : g.params) {
    drivefit::apply_assignments(s, p, "fuel.");
  }
  for (const auto & t : g.thresholds) {
    drivefit::apply_assignments(s, t);
  }
  if (g.skip_bad_rows) {
    s.parse.bad_rows = drivefit::BadRowPolicy::kSkip;
  }
  if (g.rate_hz) {
    s.analysis.rate_hz = *g.rate_hz;
  }
  s.validate();
  return s;
}

void write_output(const std::optional<std::string> & out, const std::string & text)
{
  if (!out || *out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream file(*out, std::ios::binary | std::ios::trunc);
  file << text;
  if (!file) {
    throw drivefit::Error(drivefit::ErrorCode::kInvalidArgument, "cannot write " + *out);
  }
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"Trip analytics: safety, fuel efficiency and comfort by cruise-control state"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--store", g.store, "Ride store directory (or .json file)");
  app.add_option("--config", g.config, "Config file of key = value lines");
  app.add_option("--params", g.params, "Fuel model overrides, e.g. a=5,b=0.05,c=0.001,d=0.2");
  app.add_option(
    "--thresholds", g.thresholds, "Threshold overrides, e.g. v_eps=0.1,a_hi=2,a_lo=-3.5,j_abs=5");
  app.add_flag("--skip-bad-rows", g.skip_bad_rows, "Skip and count unparsable CSV rows");
  app.add_option("--rate-hz", g.rate_hz, "Resample rate [Hz]");

  // ingest
  auto * ingest = app.add_subcommand("ingest", "Analyze trip logs and append them to the store");
  std::vector<std::string> ingest_files;
  std::optional<std::string> ingest_id;
  std::optional<std::string> ingest_started;
  bool ingest_json = false;
  ingest->add_option("files", ingest_files, "Canonical trip CSV files")->required();
  ingest->add_option("--ride-id", ingest_id, "Ride id (single file only; default: file stem)");
  ingest->add_option("--started-at", ingest_started, "Start time, e.g. 2024-05-01T08:30:00Z");
  ingest->add_flag("--json", ingest_json, "Print stored summaries as JSON");

  // summarize
  auto * summarize = app.add_subcommand("summarize", "Summarize one trip log without storing it");
  std::string summarize_file;
  std::optional<std::string> summarize_id;
  std::optional<std::string> summarize_started;
  bool summarize_json = false;
  bool summarize_table = false;
  summarize->add_option("file", summarize_file, "Canonical trip CSV file")->required();
  summarize->add_option("--ride-id", summarize_id, "Ride id (default: file stem)");
  summarize->add_option("--started-at", summarize_started, "Start time, e.g. 2024-05-01T08:30:00Z");
  auto * json_flag = summarize->add_flag("--json", summarize_json, "RideSummary JSON document");
  summarize->add_flag("--table", summarize_table, "Text table (default)")->excludes(json_flag);

  // compare
  auto * compare = app.add_subcommand("compare", "Compare a ride with its predecessors");
  std::string compare_ride;
  std::optional<std::size_t> compare_window;
  bool compare_json = false;
  compare->add_option("--ride", compare_ride, "Ride id")->required();
  compare->add_option("--window", compare_window, "Rides in the rolling average")
    ->check(CLI::Range(1, 1000));
  compare->add_flag("--json", compare_json, "ComparisonReport JSON");

  // trends
  auto * trends = app.add_subcommand("trends", "Per-ride trend of one metric");
  std::string trend_metric;
  bool trends_json = false;
  trends->add_option("--metric", trend_metric, "Metric name, e.g. safety_index.all")->required();
  trends->add_flag("--json", trends_json, "TrendSeries JSON");

  // serve
  auto * serve = app.add_subcommand("serve", "Run the local HTTP service");
  std::optional<std::string> serve_bind;
  std::optional<int> serve_port;
  serve->add_option("--bind", serve_bind, "Bind address (default 127.0.0.1)");
  serve->add_option("--port", serve_port, "Port (default 8080)");

  // export
  auto * exporter = app.add_subcommand("export", "Write plot-ready CSV series");
  std::string export_what;
  std::optional<std::string> export_ride;
  std::string export_state = "all";
  std::optional<std::string> export_out;
  exporter->add_option("--what", export_what, "headway | fuel | comfort | trends")
    ->required()
    ->check(CLI::IsMember({"headway", "fuel", "comfort", "trends"}));
  exporter->add_option("--ride", export_ride, "Ride id (required except for trends)");
  exporter->add_option("--state", export_state, "Cruise state filter: all | on | off")
    ->check(CLI::IsMember({"all", "on", "off"}));
  exporter->add_option("--out", export_out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  }

  try {
    auto settings = resolve_settings(g);

    if (*ingest) {
      if (ingest_id && ingest_files.size() != 1) {
        throw drivefit::Error(drivefit::ErrorCode::kInvalidArgument, "--ride-id needs exactly one file");
      }
      drivefit::TripStore store(settings.store);
      for (const auto & file : ingest_files) {
        const auto csv = read_file(file);
        const drivefit::RideIdentity id{
          ingest_id.value_or(std::filesystem::path(file).stem().string()), ingest_started};
        const auto analysis = drivefit::ingest_csv(store, csv, id, settings);
        report_skipped(file, analysis);
        if (ingest_json) {
          std::cout << drivefit::to_canonical_json(analysis.summary);
        } else {
          std::cout << "stored " << analysis.summary.ride_id << "\n";
        }
      }
      return 0;
    }

    if (*summarize) {
      const auto csv = read_file(summarize_file);
      const drivefit::TripStore store(settings.store);
      const drivefit::RideIdentity id{
        summarize_id.value_or(std::filesystem::path(summarize_file).stem().string()),
        summarize_started};
      const auto analysis =
        drivefit::analyze_csv(csv, id, settings, store.fuel_efficiency_population());
      report_skipped(summarize_file, analysis);
      std::cout << (summarize_json ? drivefit::to_canonical_json(analysis.summary)
                                   : drivefit::render_summary_table(analysis.summary));
      return 0;
    }

    if (*compare) {
      const drivefit::TripStore store(settings.store);
      auto options = settings.comparison;
      if (compare_window) {
        options.window = *compare_window;
      }
      const auto report = drivefit::comparison_report(store, compare_ride, options);
      std::cout << (compare_json ? drivefit::to_json(report).dump(2) + "\n"
                                 : drivefit::render_comparison_table(report));
      return 0;
    }

    if (*trends) {
      const drivefit::TripStore store(settings.store);
      const auto series = drivefit::trend_series(store, trend_metric);
      std::cout << (trends_json ? drivefit::to_json(series).dump(2) + "\n"
                                : drivefit::render_trend_table(series));
      return 0;
    }

    if (*serve) {
      if (serve_bind) {
        settings.bind_address = *serve_bind;
      }
      if (serve_port) {
        settings.port = *serve_port;
      }
      drivefit::TripStore store(settings.store);
      drivefit::Service service(store, settings);
      httplib::Server server;
      drivefit::register_routes(server, service);
      std::cerr << "serving " << settings.store.string() << " on http://" << settings.bind_address
                << ":" << settings.port << "\n";
      if (!server.listen(settings.bind_address, settings.port)) {
        std::cerr << "error: cannot listen on " << settings.bind_address << ":" << settings.port
                  << "\n";
        return kExitInternal;
      }
      return 0;
    }

    if (*exporter) {
      const drivefit::TripStore store(settings.store);
      drivefit::ExportResult result;
      if (export_what == "trends") {
        result = drivefit::export_trends(store.chronological_rides());
      } else {
        if (!export_ride) {
          throw drivefit::Error(drivefit::ErrorCode::kInvalidArgument, "--ride is required");
        }
        if (!store.find(*export_ride)) {
          throw drivefit::Error(drivefit::ErrorCode::kRideNotFound, "no ride '" + *export_ride + "'");
        }
        const auto diagnostics = store.diagnostics(*export_ride);
        if (!diagnostics) {
          throw drivefit::Error(
            drivefit::ErrorCode::kRideNotFound, "ride '" + *export_ride + "' has no stored series");
        }
        const auto what = export_what == "headway" ? drivefit::ExportSeries::kHeadway
                          : export_what == "fuel"  ? drivefit::ExportSeries::kFuel
                                                   : drivefit::ExportSeries::kComfort;
        const auto state = export_state == "on"    ? drivefit::StateFilter::kOn
                           : export_state == "off" ? drivefit::StateFilter::kOff
                                                   : drivefit::StateFilter::kAll;
        result = drivefit::export_series(*diagnostics, what, state);
      }
      if (result.rows == 0) {
        std::cerr << "warning: no samples for --what " << export_what << " --state " << export_state
                  << "; wrote header only\n";
      }
      write_output(export_out, result.csv);
      return 0;
    }
  } catch (const drivefit::Error & e) {
    std::cerr << "error: " << e.what() << "\n";
    return drivefit::is_input_error(e.code()) ? kExitInput : kExitInternal;
  } catch (const std::exception & e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return 0;
}
