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


#include "drivefit/json_codec.hpp"
#include "drivefit/pipeline.hpp"
#include "drivefit/report.hpp"
#include "drivefit/trip_store.hpp"
#include "support/run_cli.hpp"
#include "support/synthetic_trip.hpp"
#include "support/table_one.hpp"
#include "support/temp_dir.hpp"

#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

namespace
{

using testing_util::run_cli;

const std::string kFixture = std::string(DRIVEFIT_TEST_DATA_DIR) + "/fixture_trip.csv";

std::vector<std::vector<std::string>> csv_rows(const std::string & text)
{
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      cells.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') {
      cells.emplace_back();
    }
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST(Cli, SummarizeTableHasAccOnColumn)
{
  testing_util::TempDir dir;
  const auto r = run_cli({"summarize", kFixture, "--store", (dir / "s").string()});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_NE(r.out.find("ACC ON %"), std::string::npos);
  EXPECT_NE(r.out.find("Safety Index"), std::string::npos);
  EXPECT_NE(r.out.find("Duration"), std::string::npos);
}

TEST(Cli, SummarizeJsonRoundTripsThroughStore)
{
  testing_util::TempDir dir;
  const auto r = run_cli({"summarize", kFixture, "--json", "--store", (dir / "s").string()});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto summary = drivefit::ride_summary_from_json(drivefit::Json::parse(r.out));
  EXPECT_EQ(summary.ride_id, "fixture_trip");
  {
    drivefit::TripStore store(dir / "other");
    store.store_ride(summary);
  }
  drivefit::TripStore store(dir / "other");
  EXPECT_EQ(drivefit::to_canonical_json(*store.find("fixture_trip")), r.out);
}

TEST(Cli, MissingFileIsInputError)
{
  const auto r = run_cli({"summarize", "/no/such/trip.csv", "--store", "/tmp/drivefit-unused"});
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.err.find("/no/such/trip.csv"), std::string::npos);
  EXPECT_EQ(run_cli({"bogus-command"}).exit_code, 1);
  EXPECT_EQ(run_cli({"summarize", kFixture, "--thresholds", "a_lo=1"}).exit_code, 1);
}

TEST(Cli, SchemaErrorsExitOne)
{
  testing_util::TempDir dir;
  testing_util::write_text(dir / "bad.csv", "time,velocity\n0,1\n");
  const auto r = run_cli({"summarize", (dir / "bad.csv").string(), "--store", (dir / "s").string()});
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.err.find("SchemaMismatch"), std::string::npos);
}

TEST(Cli, IngestCompareOneRideShowsDashes)
{
  testing_util::TempDir dir;
  const auto store = (dir / "s").string();
  ASSERT_EQ(run_cli({"ingest", kFixture, "--store", store}).exit_code, 0);
  EXPECT_EQ(run_cli({"ingest", kFixture, "--store", store}).exit_code, 1);
  const auto r = run_cli({"compare", "--ride", "fixture_trip", "--store", store});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_NE(r.out.find("Previous ride"), std::string::npos);
  std::istringstream lines(r.out);
  std::string line;
  bool saw_prev = false;
  while (std::getline(lines, line)) {
    if (line.rfind("Previous ride", 0) == 0 || line.rfind("Change rate (to prev.)", 0) == 0) {
      saw_prev = true;
      EXPECT_NE(line.find("—"), std::string::npos) << line;
      EXPECT_EQ(line.find_first_of("0123456789"), std::string::npos) << line;
    }
  }
  EXPECT_TRUE(saw_prev);
  EXPECT_EQ(run_cli({"compare", "--ride", "ghost", "--store", store}).exit_code, 1);
}

TEST(Cli, CompareIsDeterministicAndMatchesTableOne)
{
  testing_util::TempDir dir;
  {
    drivefit::TripStore store(dir / "s");
    table_one::seed(store);
  }
  const std::vector<std::string> args = {"compare", "--ride", "recent", "--store", (dir / "s").string()};
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  ASSERT_EQ(a.exit_code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  for (const char * label :
       {"Avg. of nearest 5 rides", "Previous ride", "Recent ride", "Change rate (to avg.)",
        "Change rate (to prev.)"}) {
    EXPECT_NE(a.out.find(label), std::string::npos) << label;
  }
  EXPECT_NE(a.out.find("1596.8"), std::string::npos);
  EXPECT_NE(a.out.find("41.5"), std::string::npos);
}

TEST(Cli, TrendsJson)
{
  testing_util::TempDir dir;
  {
    drivefit::TripStore store(dir / "s");
    table_one::seed(store);
  }
  const auto r = run_cli({"trends", "--metric", "acc_on_percent", "--json", "--store", (dir / "s").string()});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto doc = drivefit::Json::parse(r.out);
  EXPECT_EQ(doc["points"].size(), 6u);
  EXPECT_DOUBLE_EQ(doc["points"][5]["value"].get<double>(), 52.6);
  EXPECT_EQ(run_cli({"trends", "--metric", "nope", "--store", (dir / "s").string()}).exit_code, 1);
}

TEST(Cli, ExportHeadwayReaggregatesToStoredFractions)
{
  testing_util::TempDir dir;
  const auto store_path = (dir / "s").string();
  ASSERT_EQ(run_cli({"ingest", kFixture, "--store", store_path}).exit_code, 0);
  const auto out = (dir / "headway.csv").string();
  const auto r = run_cli(
    {"export", "--what", "headway", "--ride", "fixture_trip", "--state", "on", "--out", out,
     "--store", store_path});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto rows = csv_rows(testing_util::read_text(out));
  ASSERT_FALSE(rows.empty());
  EXPECT_EQ(rows[0], (std::vector<std::string>{"t", "headway", "zone", "cruise_on"}));

  double counts[3] = {0, 0, 0};
  for (std::size_t i = 1; i < rows.size(); ++i) {
    ASSERT_EQ(rows[i][3], "1");
    const auto & z = rows[i][2];
    if (!z.empty()) {
      counts[z == "alert" ? 0 : z == "attention" ? 1 : 2] += 1;
    }
  }
  drivefit::TripStore store(store_path);
  const auto zoning = *store.diagnostics("fixture_trip")->zoning.on;
  const double considered = counts[0] + counts[1] + counts[2];
  EXPECT_EQ(considered, static_cast<double>(zoning.considered_samples));
  EXPECT_DOUBLE_EQ(counts[0] / considered, zoning.alert_fraction);
  EXPECT_DOUBLE_EQ(counts[1] / considered, zoning.attention_fraction);
  EXPECT_NEAR(100.0 * (counts[1] + counts[2]) / considered, *store.find("fixture_trip")->safety_index.on, 1e-9);

  for (const auto & [what, header] :
       {std::pair{"fuel", "t,speed_kph,accel,fcr,distance_km,cruise_on"},
        std::pair{"comfort", "t,accel,jerk,violation,cruise_on"}}) {
    const auto e = run_cli({"export", "--what", what, "--ride", "fixture_trip", "--store", store_path});
    ASSERT_EQ(e.exit_code, 0) << e.err;
    EXPECT_EQ(e.out.substr(0, e.out.find('\n')), header);
  }
  const auto t = run_cli({"export", "--what", "trends", "--store", store_path});
  EXPECT_EQ(t.out.rfind("ordinal,ride_id,started_at,duration_s", 0), 0u);
  EXPECT_EQ(run_cli({"export", "--what", "headway", "--ride", "ghost", "--store", store_path}).exit_code, 1);
  EXPECT_EQ(run_cli({"export", "--what", "pictures", "--ride", "fixture_trip", "--store", store_path}).exit_code, 1);
}

TEST(Cli, ExportOfEmptyStateWarns)
{
  testing_util::TempDir dir;
  synthetic::TripSpec spec;
  spec.cruise_share = 0.0;
  testing_util::write_text(dir / "off.csv", synthetic::make_trip(spec).csv);
  const auto store_path = (dir / "s").string();
  ASSERT_EQ(run_cli({"ingest", (dir / "off.csv").string(), "--store", store_path}).exit_code, 0);
  const auto r = run_cli({"export", "--what", "headway", "--ride", "off", "--state", "on", "--store", store_path});
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, "t,headway,zone,cruise_on\n");
  EXPECT_NE(r.err.find("warning"), std::string::npos);
}

TEST(Cli, CorruptStoreIsInternalError)
{
  testing_util::TempDir dir;
  std::filesystem::create_directories(dir / "s");
  testing_util::write_text(dir / "s/manifest.json", "{ broken");
  const auto r = run_cli({"compare", "--ride", "x", "--store", (dir / "s").string()});
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("StorageFailure"), std::string::npos);
}

TEST(Cli, ConfigPrecedence)
{
  testing_util::TempDir dir;
  testing_util::write_text(dir / "cfg.txt", "fuel.a = 7\nfuel.b = 0.06\n");
  const auto base = run_cli({"summarize", kFixture, "--json", "--store", (dir / "s").string()});
  const auto file = run_cli(
    {"summarize", kFixture, "--json", "--config", (dir / "cfg.txt").string(), "--store", (dir / "s").string()});
  const auto env = run_cli(
    {"summarize", kFixture, "--json", "--config", (dir / "cfg.txt").string(), "--store", (dir / "s").string()},
    "DRIVEFIT_FUEL_A=5");
  const auto flag = run_cli(
    {"summarize", kFixture, "--json", "--config", (dir / "cfg.txt").string(), "--params", "a=5,b=0.05",
     "--store", (dir / "s").string()},
    "DRIVEFIT_FUEL_A=9");
  ASSERT_EQ(base.exit_code, 0);
  ASSERT_EQ(file.exit_code, 0);
  ASSERT_EQ(env.exit_code, 0);
  ASSERT_EQ(flag.exit_code, 0);
  EXPECT_NE(base.out, file.out);
  EXPECT_NE(env.out, file.out);
  EXPECT_EQ(flag.out, base.out);
}

TEST(Cli, SkipBadRowsWarnsWithCount)
{
  testing_util::TempDir dir;
  auto text = testing_util::read_text(kFixture);
  const auto second_row = text.find('\n', text.find('\n') + 1) + 1;
  text.insert(second_row, "garbage,row,,,,\nnot,a,number,,1,\n");
  const auto file = (dir / "bad.csv").string();
  testing_util::write_text(file, text);

  const auto strict = run_cli({"summarize", file, "--store", (dir / "s").string()});
  EXPECT_EQ(strict.exit_code, 1);

  const auto lenient =
    run_cli({"--skip-bad-rows", "summarize", file, "--store", (dir / "s").string()});
  ASSERT_EQ(lenient.exit_code, 0) << lenient.err;
  EXPECT_NE(lenient.err.find("skipped 2 bad row(s)"), std::string::npos) << lenient.err;
}
