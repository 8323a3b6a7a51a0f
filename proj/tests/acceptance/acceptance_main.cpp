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


// Acceptance checks, one per criterion. Usage: drivefit_acceptance [name...]
// Prints one "PASS <name>" or "FAIL <name>" line per criterion (with detail
// lines for failures) and exits non-zero if any selected criterion fails.

#include "drivefit/drivefit.hpp"
#include "drivefit/http_server.hpp"
#include "support/oracles.hpp"
#include "support/run_cli.hpp"
#include "support/synthetic_trip.hpp"
#include "support/table_one.hpp"
#include "support/temp_dir.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <thread>
#include <vector>

namespace
{

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
  return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Collects failure details for one criterion.
class Check
{
public:
  void expect(bool ok, const std::string & detail)
  {
    if (!ok) {
      failures_.push_back(detail);
    }
  }
  void note(const std::string & detail) { notes_.push_back(detail); }
  bool ok() const { return failures_.empty(); }
  const std::vector<std::string> & failures() const { return failures_; }
  const std::vector<std::string> & notes() const { return notes_; }

private:
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

template <class Fn>
std::string error_name(Fn && fn)
{
  try {
    fn();
  } catch (const drivefit::Error & e) {
    return std::string(drivefit::to_string(e.code()));
  }
  return "none";
}

std::string fixture_csv()
{
  return testing_util::read_text(std::string(DRIVEFIT_TEST_DATA_DIR) + "/fixture_trip.csv");
}

std::string constant_speed_csv(double kph, double seconds)
{
  std::string csv = "timestamp,speed,lead_distance,accel,cruise_on,odometer\n";
  const double v = kph / 3.6;
  const auto n = static_cast<int>(seconds * 10.0);
  for (int i = 0; i <= n; ++i) {
    csv += fmt::format("{:.1f},{},,,{},\n", i / 10.0, v, i % 200 < 100 ? 1 : 0);
  }
  return csv;
}

// Table I: every published change-rate cell, to-avg and to-prev, via `compare --json`.
void table1(Check & c)
{
  testing_util::TempDir dir;
  const auto store_path = dir / "store";
  {
    drivefit::TripStore store(store_path);
    table_one::seed(store);
  }
  const auto start = Clock::now();
  const auto r = testing_util::run_cli(
    {"compare", "--ride", std::string(table_one::kRecentId), "--json", "--store", store_path.string()});
  const double elapsed = seconds_since(start);
  c.expect(r.exit_code == 0, "compare exited " + std::to_string(r.exit_code) + ": " + r.err);
  c.expect(elapsed < 1.0, fmt::format("runtime {:.3f} s >= 1 s", elapsed));
  if (r.exit_code != 0) {
    return;
  }
  const auto doc = drivefit::Json::parse(r.out);
  int matched = 0;
  int total = 0;
  for (const auto & [row, published] :
       {std::pair{"change_to_avg", &table_one::kChangeToAverage},
        std::pair{"change_to_prev", &table_one::kChangeToPrevious}}) {
    for (std::size_t k = 0; k < table_one::kColumns.size(); ++k) {
      const std::string column(table_one::kColumns[k]);
      const auto & cell = doc[row][column];
      ++total;
      if (!cell.is_number()) {
        c.expect(false, fmt::format("{} {}: absent", row, column));
        continue;
      }
      const double got = cell.get<double>();
      const double want = (*published)[k];
      const bool ok = std::abs(got - want) <= 0.1 + 1e-9;
      matched += ok ? 1 : 0;
      c.expect(ok, fmt::format("{} {}: got {:.2f}, published {} (diff {:+.2f})", row, column, got, want, got - want));
    }
  }
  c.note(fmt::format("{}/{} cells within +-0.1; runtime {:.3f} s", matched, total, elapsed));
}

// Fuel model point checks and the constant-speed FE identity through the full pipeline.
void fuel(Check & c)
{
  c.expect(drivefit::fcr(0.0, 0.0) == 5.0, "FCR(0, 0) != 5.0");
  c.expect(std::abs(drivefit::fcr(100.0, 0.0) - 20.0) < 1e-12,
           fmt::format("FCR(100 kph, 0) = {}", drivefit::fcr(100.0, 0.0)));
  c.expect(drivefit::fcr(0.0, -30.0) == 0.0, "FCR(0, -30) not clamped to 0");
  for (const double kph : {30.0, 60.0, 100.0}) {
    const auto s = drivefit::analyze_csv(
                     constant_speed_csv(kph, 120.0), {"const", std::nullopt}, drivefit::Settings{})
                     .summary;
    const double want = 100.0 / drivefit::fcr(kph, 0.0);
    for (const auto & [name, fe] :
         {std::pair{"on", s.fuel_efficiency_kmpl.on}, std::pair{"off", s.fuel_efficiency_kmpl.off},
          std::pair{"all", s.fuel_efficiency_kmpl.all}}) {
      const bool ok = fe && std::abs(*fe / want - 1.0) <= 1e-9;
      c.expect(ok, fmt::format("{} kph FE.{} = {} vs 100/FCR = {}", kph, name, fe.value_or(NAN), want));
    }
  }
}

// 1000 randomized headway arrays: streaming classification equals brute force.
void zones(Check & c)
{
  std::mt19937 rng(20240501);
  std::uniform_int_distribution<int> kind(0, 9);
  std::uniform_int_distribution<std::size_t> length(0, 400);
  std::uniform_real_distribution<double> value(0.0, 5.0);
  int mismatches = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<std::optional<double>> h(length(rng));
    for (auto & x : h) {
      const int k = kind(rng);
      if (k == 0) {
        continue;
      }
      x = k == 1 ? drivefit::kInfinity : k == 2 ? 1.0 : k == 3 ? 2.0 : value(rng);
    }
    const auto got = drivefit::classify_zones(h);
    std::size_t counts[3] = {0, 0, 0};
    for (std::size_t i = 0; i < h.size(); ++i) {
      const auto want = oracle::zone_of(h[i]);
      const std::string have = got.zones[i] ? std::string(drivefit::to_string(*got.zones[i])) : "";
      if (want != have) {
        ++mismatches;
      }
      if (!want.empty()) {
        ++counts[want == "alert" ? 0 : want == "attention" ? 1 : 2];
      }
    }
    const auto considered = counts[0] + counts[1] + counts[2];
    if (considered == 0) {
      c.expect(!got.zoning, fmt::format("trial {}: zoning present without considered samples", trial));
      continue;
    }
    if (!got.zoning) {
      c.expect(false, fmt::format("trial {}: zoning absent", trial));
      continue;
    }
    const auto & z = *got.zoning;
    c.expect(z.alert_samples == counts[0] && z.attention_samples == counts[1] && z.safe_samples == counts[2],
             fmt::format("trial {}: zone counts differ from brute force", trial));
    const double sum = z.alert_fraction + z.attention_fraction + z.safe_fraction;
    c.expect(std::abs(sum - 1.0) <= 1e-9, fmt::format("trial {}: fractions sum to {}", trial, sum));
    c.expect(std::abs(z.safety_index - 100.0 * (z.attention_fraction + z.safe_fraction)) <= 1e-9,
             fmt::format("trial {}: safety index inconsistent", trial));
  }
  c.expect(mismatches == 0, fmt::format("{} per-sample label mismatches", mismatches));
}

// Comfort index equals the literal predicate's mean; limits are strict.
void comfort(Check & c)
{
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> a(-6.0, 4.0);
  std::uniform_real_distribution<double> j(-9.0, 9.0);
  std::uniform_int_distribution<int> edge(0, 19);
  const double edges_a[] = {2.0, -3.5};
  const double edges_j[] = {5.0, -5.0};
  for (int trial = 0; trial < 500; ++trial) {
    drivefit::UniformTrace tr;
    const std::size_t n = 50 + static_cast<std::size_t>(trial);
    tr.speed.assign(n, 10.0);
    tr.lead_distance.assign(n, std::nullopt);
    tr.cruise_on.assign(n, false);
    tr.distance_km.assign(n, 0.0);
    tr.accel.resize(n);
    tr.jerk.resize(n);
    std::size_t bad = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const int e = edge(rng);
      tr.accel[i] = e == 0 ? edges_a[i % 2] : a(rng);
      tr.jerk[i] = e == 1 ? edges_j[i % 2] : j(rng);
      bad += oracle::discomfort(tr.accel[i], tr.jerk[i]) ? 1 : 0;
    }
    const double want = 100.0 * (1.0 - static_cast<double>(bad) / static_cast<double>(n));
    const double got = drivefit::comfort_result(tr).comfort_index;
    c.expect(std::abs(got - want) <= 1e-9, fmt::format("trial {}: {} vs {}", trial, got, want));
  }
  c.expect(!drivefit::is_discomfort(2.0, 0.0), "A = 2.0 flagged");
  c.expect(!drivefit::is_discomfort(-3.5, 0.0), "A = -3.5 flagged");
  c.expect(!drivefit::is_discomfort(0.0, 5.0), "J = 5.0 flagged");
  c.expect(!drivefit::is_discomfort(0.0, -5.0), "J = -5.0 flagged");
  c.expect(drivefit::is_discomfort(2.0001, 0.0) && drivefit::is_discomfort(0.0, -5.0001),
           "values beyond the limits not flagged");
}

// Generated trips with prescribed zone occupancy, cruise share and discomfort share.
void synthetic_trips(Check & c)
{
  struct Case
  {
    double alert, attention, cruise, violation;
  };
  const Case cases[] = {
    {0.25, 0.25, 0.40, 0.10}, {0.10, 0.60, 0.75, 0.05}, {0.50, 0.10, 0.20, 0.20}, {0.0, 0.0, 1.0, 0.0},
    {0.33, 0.33, 0.50, 0.15}};
  unsigned seed = 1;
  for (const auto & k : cases) {
    synthetic::TripSpec spec;
    spec.alert_share = k.alert;
    spec.attention_share = k.attention;
    spec.cruise_share = k.cruise;
    spec.violation_share = k.violation;
    spec.seed = seed++;
    const auto trip = synthetic::make_trip(spec);
    const auto a = drivefit::analyze_csv(trip.csv, {"syn", std::nullopt}, drivefit::Settings{});
    const auto & z = *a.diagnostics.zoning.all;
    const auto & s = a.summary;
    const auto within = [&](const char * what, double got, double want) {
      c.expect(std::abs(got - want) <= 0.5,
               fmt::format("case {}: {} {:.3f} pp vs prescribed {:.3f} pp", seed - 1, what, got, want));
    };
    within("alert", 100.0 * z.alert_fraction, 100.0 * k.alert);
    within("attention", 100.0 * z.attention_fraction, 100.0 * k.attention);
    within("safe", 100.0 * z.safe_fraction, 100.0 * (1.0 - k.alert - k.attention));
    within("ACC ON", s.acc_on_percent, 100.0 * k.cruise);
    within("discomfort", 100.0 - *s.comfort_index.all, 100.0 * k.violation);
  }
}

// Error contracts on degenerate logs, and a 10^6-row log under 10 s.
void ingest(Check & c)
{
  const std::string header = "timestamp,speed,lead_distance,accel,cruise_on,odometer\n";
  const auto expect_error = [&](const char * what, const std::string & csv, const char * want) {
    const auto got = error_name([&] { drivefit::parse_trip_log(csv, "r"); });
    c.expect(got == want, fmt::format("{}: got {}, expected {}", what, got, want));
  };
  expect_error("header-only", header, "EmptyLog");
  expect_error("single-row", header + "0,10,,,0,\n", "EmptyLog");
  expect_error("duplicate timestamps", header + "0,10,,,0,\n1,10,,,0,\n1,11,,,0,\n", "NonMonotonicTime");
  expect_error("missing columns", "timestamp,speed\n0,1\n1,1\n", "SchemaMismatch");
  const auto shuffled = drivefit::parse_trip_log(header + "2,12,,,0,\n0,10,,,0,\n1,11,,,1,\n", "r");
  c.expect(shuffled.samples.size() == 3 && shuffled.samples[0].timestamp == 0.0 &&
             shuffled.samples[2].speed == 12.0,
           "out-of-order rows not sorted");

  testing_util::TempDir dir;
  const auto csv = synthetic::make_long_csv(1000000);
  drivefit::TripStore store(dir / "store");
  const auto start = Clock::now();
  const auto a = drivefit::ingest_csv(store, csv, {"million", std::nullopt}, drivefit::Settings{});
  const double elapsed = seconds_since(start);
  c.expect(a.diagnostics.size() == 1000000, fmt::format("grid has {} samples", a.diagnostics.size()));
  c.expect(store.find("million").has_value(), "ride not stored");
  c.expect(elapsed < 10.0, fmt::format("10^6-row ingest + summarize took {:.2f} s", elapsed));
  c.note(fmt::format("10^6-row ingest + summarize: {:.2f} s", elapsed));
}

// CLI summarize --json, POST /ingest and the library produce identical documents.
void layers(Check & c)
{
  testing_util::TempDir dir;
  const std::string path = std::string(DRIVEFIT_TEST_DATA_DIR) + "/fixture_trip.csv";
  const auto library =
    drivefit::to_canonical_json(drivefit::analyze_csv(fixture_csv(), {"fixture_trip", std::nullopt}, {}).summary);

  const auto cli = testing_util::run_cli({"summarize", path, "--json", "--store", (dir / "cli").string()});
  c.expect(cli.exit_code == 0, "summarize failed: " + cli.err);

  drivefit::Settings settings;
  settings.store = dir / "svc";
  drivefit::TripStore store(settings.store);
  drivefit::Service service(store, settings);
  httplib::Server server;
  drivefit::register_routes(server, service);
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread thread([&] { server.listen_after_bind(); });
  server.wait_until_ready();
  httplib::Client client("127.0.0.1", port);
  const auto res = client.Post("/ingest?ride_id=fixture_trip", fixture_csv(), "text/csv");
  server.stop();
  thread.join();

  c.expect(res && res->status == 200, "POST /ingest failed");
  c.expect(cli.out == library, "CLI summarize --json differs from the library document");
  c.expect(res && res->body == library, "POST /ingest response differs from the library document");
}

}  // namespace

int main(int argc, char ** argv)
{
  const std::vector<std::pair<std::string, std::function<void(Check &)>>> criteria = {
    {"table1", table1}, {"fuel", fuel}, {"zones", zones}, {"comfort", comfort},
    {"synthetic", synthetic_trips}, {"ingest", ingest}, {"layers", layers}};

  std::vector<std::string> selected(argv + 1, argv + argc);
  int failed = 0;
  for (const auto & [name, run] : criteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), name) == selected.end()) {
      continue;
    }
    Check check;
    try {
      run(check);
    } catch (const std::exception & e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    for (const auto & n : check.notes()) {
      std::cout << "  " << name << ": " << n << "\n";
    }
    for (const auto & f : check.failures()) {
      std::cout << "  " << name << ": " << f << "\n";
    }
    std::cout << (check.ok() ? "PASS " : "FAIL ") << name << "\n";
    failed += check.ok() ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
