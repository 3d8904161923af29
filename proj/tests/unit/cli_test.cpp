#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "footfall/cli/cli.hpp"
#include "footfall/io/json_io.hpp"

using namespace footfall;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("footfall_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  Result Call(std::vector<std::string> args) {
    args.push_back("--out");
    args.push_back(dir_.string());
    std::ostringstream out, err;
    Result r;
    r.code = cli::Main(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
  }

  static std::string Scenario(const std::string& file) {
    return (footfall::testing::ScenarioDir() / file).string();
  }

  std::vector<std::vector<std::string>> ReadCsv(const fs::path& p) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(io::ReadFile(p));
    std::string line;
    while (std::getline(in, line)) {
      std::vector<std::string> cells;
      std::stringstream ls(line);
      std::string cell;
      while (std::getline(ls, cell, ',')) cells.push_back(cell);
      rows.push_back(cells);
    }
    return rows;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, RunStaticStonesWritesReportAndTelemetry) {
  const Result r = Call({"run", Scenario("stones_static.json")});
  EXPECT_EQ(r.code, cli::kExitOk) << r.out << r.err;
  EXPECT_NE(r.out.find("success"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir_ / "stones_static_report.json"));
  EXPECT_TRUE(fs::exists(dir_ / "stones_static_telemetry.csv"));
  const auto rows = io::TelemetryFromCsv(io::ReadFile(dir_ / "stones_static_telemetry.csv"));
  EXPECT_FALSE(rows.empty());
}

TEST_F(CliTest, RunWithoutReplanningFails) {
  const Result r = Call({"run", Scenario("stones_dynamic.json"), "--set", "replan_enabled=false",
                         "--no-telemetry"});
  EXPECT_EQ(r.code, cli::kExitFailure);
  EXPECT_NE(r.out.find("FootOffTerrain"), std::string::npos) << r.out;
  EXPECT_FALSE(fs::exists(dir_ / "stones_dynamic_telemetry.csv"));
}

TEST_F(CliTest, MalformedScenarioIsUsageError) {
  const fs::path bad = dir_ / "bad.json";
  io::WriteFileAtomic(bad, R"({"walk": {"strid": 0.3}})");
  const Result r = Call({"run", bad.string()});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_NE(r.err.find("walk.strid"), std::string::npos) << r.err;
  EXPECT_EQ(Call({"run", Scenario("stones_static.json"), "--set", "nokey"}).code,
            cli::kExitUsage);
  EXPECT_EQ(Call({"run", (dir_ / "missing.json").string()}).code, cli::kExitUsage);
}

TEST_F(CliTest, UnknownSubcommandAndFlags) {
  EXPECT_EQ(Call({"fly"}).code, cli::kExitUsage);
  EXPECT_EQ(Call({"bench", "--format", "xml"}).code, cli::kExitUsage);
  std::ostringstream out, err;
  EXPECT_EQ(cli::Main({"--help"}, out, err), cli::kExitOk);
  EXPECT_NE(out.str().find("bench"), std::string::npos);
}

TEST_F(CliTest, BenchNeedsOneHundredIterations) {
  const Result r = Call({"bench", "--iterations", "50"});
  EXPECT_EQ(r.code, cli::kExitUsage);
}

TEST_F(CliTest, BenchOnEmptyGridReportsNoPath) {
  const Result r = Call({"bench", "--empty", "--iterations", "100", "--write"});
  EXPECT_NE(r.out.find("100 without a path"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("identical"), std::string::npos);
  const auto rows = ReadCsv(dir_ / "bench.json");
  ASSERT_FALSE(rows.empty());
}

TEST_F(CliTest, BenchIsRepeatableAndWritesCsv) {
  const Result r = Call({"bench", "--iterations", "100", "--write", "--format", "csv"});
  EXPECT_NE(r.out.find("repeat with same seed: identical"), std::string::npos) << r.out;
  const auto rows = ReadCsv(dir_ / "bench.csv");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0][2], "p95_ms");
  EXPECT_EQ(rows[1][0], "100");
  EXPECT_EQ(r.code, rows[1][5] == "1" ? cli::kExitOk : cli::kExitFailure);
}

TEST_F(CliTest, PlanWritesMonotoneFootsteps) {
  const Result r = Call({"plan", Scenario("plan_request.json")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const fs::path plan = dir_ / "plan_request_plan.json";
  ASSERT_TRUE(fs::exists(plan));
  const Result e = Call({"export", plan.string(), "--kind", "footsteps"});
  ASSERT_EQ(e.code, cli::kExitOk) << e.err;
  const auto rows = ReadCsv(dir_ / "plan_request_plan_footsteps.csv");
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0][0], "seq");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i][0], std::to_string(i - 1));
    if (i > 1) EXPECT_GT(std::stod(rows[i][6]), std::stod(rows[i - 1][6]));
    if (i > 1) EXPECT_NE(rows[i][1], rows[i - 1][1]);
  }
}

TEST_F(CliTest, PlanWithoutSteppableCellsExitsOne) {
  terrain::SteppableGrid g(0.01, {-0.2, -0.5}, 200, 100);
  io::WriteFileAtomic(dir_ / "empty_grid.json", io::GridToJson(g));
  io::WriteFileAtomic(dir_ / "req.json",
                      R"({"grid_file": "empty_grid.json",
                          "q_init": {"side": "left", "x": 0.0, "y": 0.1, "yaw": 0.0}})");
  const Result r = Call({"plan", (dir_ / "req.json").string()});
  EXPECT_EQ(r.code, cli::kExitFailure);
  EXPECT_NE(r.err.find("NoFeasiblePath"), std::string::npos) << r.err;
}

TEST_F(CliTest, ExportZmpAndSwingColumns) {
  ASSERT_EQ(Call({"run", Scenario("stones_dynamic.json")}).code, cli::kExitOk);
  const fs::path csv = dir_ / "stones_dynamic_telemetry.csv";
  ASSERT_EQ(Call({"export", csv.string(), "--kind", "zmp"}).code, cli::kExitOk);
  const auto zmp = ReadCsv(dir_ / "stones_dynamic_telemetry_zmp.csv");
  ASSERT_GT(zmp.size(), 1u);
  EXPECT_EQ(zmp[0], (std::vector<std::string>{"t", "zmp_ref_x", "zmp_meas_x", "com_x",
                                               "zmp_ref_y", "zmp_meas_y", "com_y"}));

  ASSERT_EQ(Call({"export", csv.string(), "--kind", "swing", "--format", "csv"}).code,
            cli::kExitOk);
  const auto swing = ReadCsv(dir_ / "stones_dynamic_telemetry_swing.csv");
  ASSERT_GT(swing.size(), 2u);
  // Within one swing the foot moves continuously, including across the
  // retarget seam: no tick may jump more than 1 cm (5 m/s).
  for (std::size_t i = 2; i < swing.size(); ++i) {
    if (swing[i][5] != swing[i - 1][5] || (swing[i][5] != "left" && swing[i][5] != "right")) {
      continue;
    }
    const double dx = std::stod(swing[i][1]) - std::stod(swing[i - 1][1]);
    const double dy = std::stod(swing[i][2]) - std::stod(swing[i - 1][2]);
    const double dz = std::stod(swing[i][3]) - std::stod(swing[i - 1][3]);
    EXPECT_LT(std::sqrt(dx * dx + dy * dy + dz * dz), 0.01) << "row " << i;
  }
}

TEST_F(CliTest, ExportFootstepsFromReport) {
  ASSERT_EQ(Call({"run", Scenario("stones_static.json"), "--no-telemetry"}).code, cli::kExitOk);
  const Result r = Call({"export", (dir_ / "stones_static_report.json").string(), "--kind",
                         "footsteps", "--format", "json"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_TRUE(fs::exists(dir_ / "stones_static_report_footsteps.json"));
}

TEST_F(CliTest, ExportUnknownKind) {
  const Result r = Call({"export", Scenario("plan_request.json"), "--kind", "torque"});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_NE(r.err.find("torque"), std::string::npos);
}

TEST_F(CliTest, MapWritesGrid) {
  const Result r = Call({"map", Scenario("stones_static.json")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto g = io::GridFromJson(io::ReadFile(dir_ / "stones_static_grid.json"));
  EXPECT_GT(g.SteppableCount(), 0u);
  EXPECT_NE(r.out.find("planes"), std::string::npos);
}

TEST_F(CliTest, OutDirFromEnvironment) {
  const fs::path env_dir = dir_ / "from_env";
  ::setenv("FOOTFALL_OUT_DIR", env_dir.string().c_str(), 1);
  std::ostringstream out, err;
  const int code = cli::Main({"plan", Scenario("plan_request.json")}, out, err);
  ::unsetenv("FOOTFALL_OUT_DIR");
  EXPECT_EQ(code, cli::kExitOk) << err.str();
  EXPECT_TRUE(fs::exists(env_dir / "plan_request_plan.json"));
}
