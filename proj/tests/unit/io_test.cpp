#include <filesystem>
#include <functional>
#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "footfall/common/error.hpp"
#include "footfall/io/json_io.hpp"

using namespace footfall;
namespace fs = std::filesystem;

namespace {

std::string ErrorOf(const std::function<void()>& fn, ErrorCode expected = ErrorCode::kParseError) {
  try {
    fn();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), expected) << e.what();
    return e.what();
  }
  ADD_FAILURE() << "no footfall::Error thrown";
  return {};
}

std::string Static() { return io::ReadFile(footfall::testing::ScenarioDir() / "stones_static.json"); }

fs::path TempDir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("footfall_io_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST(ScenarioJson, GoldenScenariosLoad) {
  for (const char* f : {"stones_static.json", "stones_dynamic.json", "stones_dynamic_far.json",
                        "narrow_path.json"}) {
    const auto s = io::ScenarioFromJson(io::ReadFile(footfall::testing::ScenarioDir() / f));
    EXPECT_NO_THROW(s.Validate()) << f;
    EXPECT_FALSE(s.terrain.empty());
  }
  const auto narrow =
      io::ScenarioFromJson(io::ReadFile(footfall::testing::ScenarioDir() / "narrow_path.json"));
  EXPECT_DOUBLE_EQ(narrow.mapping.resolution, 0.005);
}

TEST(ScenarioJson, RoundTrip) {
  const auto a = io::ScenarioFromJson(Static());
  const std::string text = io::ScenarioToJson(a);
  const auto b = io::ScenarioFromJson(text);
  EXPECT_EQ(io::ScenarioToJson(b), text);
  ASSERT_EQ(a.terrain.size(), b.terrain.size());
  for (std::size_t i = 0; i < a.terrain.size(); ++i) {
    EXPECT_EQ(a.terrain[i].center, b.terrain[i].center);
  }
}

TEST(ScenarioJson, EmptyObjectGivesDefaults) {
  const auto s = io::ScenarioFromJson("{}");
  EXPECT_EQ(s.schema_version, 1);
  EXPECT_DOUBLE_EQ(s.latency.SerialTotal(), sim::LatencyModel{}.SerialTotal());
  EXPECT_EQ(s.planner.max_steps, 4);
}

TEST(ScenarioJson, UnknownKeyNamesItsPath) {
  const std::string msg =
      ErrorOf([] { io::ScenarioFromJson(R"({"planner": {"max_stepz": 3}})"); });
  EXPECT_NE(msg.find("planner.max_stepz"), std::string::npos) << msg;
}

TEST(ScenarioJson, WrongTypeNamesItsPath) {
  const std::string msg =
      ErrorOf([] { io::ScenarioFromJson(R"({"latency": {"mapping": "slow"}})"); });
  EXPECT_NE(msg.find("latency.mapping"), std::string::npos) << msg;
  const std::string arr = ErrorOf([] {
    io::ScenarioFromJson(R"({"terrain": [{"id": 0, "center": [0, 0], "size": [1, 1, 0.1]}]})");
  });
  EXPECT_NE(arr.find("terrain.0.center"), std::string::npos) << arr;
}

TEST(ScenarioJson, MalformedTextIsParseError) {
  const std::string msg = ErrorOf([] { io::ScenarioFromJson(R"({"seed": 1,)"); });
  EXPECT_NE(msg.find("malformed"), std::string::npos);
  ErrorOf([] { io::ScenarioFromJson("[1, 2]"); });
  ErrorOf([] { io::ScenarioFromJson(R"({"schema_version": 2})"); });
}

TEST(ScenarioJson, Overrides) {
  const std::vector<std::string> o{"planner.max_steps=3", "replan_enabled=false",
                                   "latency.comm=0.02", "name=custom",
                                   "disturbances=[{\"stone_id\": 2, \"displacement\": [0.1, 0], "
                                   "\"time\": 2.0}]"};
  const auto s = io::ScenarioFromJson(Static(), o);
  EXPECT_EQ(s.planner.max_steps, 3);
  EXPECT_FALSE(s.replan_enabled);
  EXPECT_DOUBLE_EQ(s.latency.comm, 0.02);
  EXPECT_EQ(s.name, "custom");
  ASSERT_EQ(s.disturbances.size(), 1u);
  EXPECT_EQ(s.disturbances[0].stone_id, 2);
  EXPECT_DOUBLE_EQ(*s.disturbances[0].time, 2.0);
}

TEST(ScenarioJson, BadOverrides) {
  std::vector<std::string> o{"planner.nope=3"};
  EXPECT_NE(ErrorOf([&] { io::ScenarioFromJson(Static(), o); }).find("planner.nope"),
            std::string::npos);
  o = {"justakey"};
  ErrorOf([&] { io::ScenarioFromJson(Static(), o); });
  o = {"planner.max_steps=many"};
  EXPECT_NE(ErrorOf([&] { io::ScenarioFromJson(Static(), o); }).find("planner.max_steps"),
            std::string::npos);
}

TEST(ScenarioJson, ProfileOverrideAppliesNarrowDefaults) {
  const std::vector<std::string> o{"profile=narrow_path"};
  EXPECT_DOUBLE_EQ(io::ScenarioFromJson("{}", o).mapping.resolution, 0.005);
  const std::vector<std::string> bad{"profile=tiny"};
  ErrorOf([&] { io::ScenarioFromJson("{}", bad); });
}

TEST(GridJson, RoundTripKeepsCells) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> pick(0, 3);
  terrain::SteppableGrid g(0.01, {-0.2, -0.5}, 60, 40);
  for (auto& c : g.cells()) {
    const int k = pick(rng);
    if (k > 0) c = {true, (50 * k) / 1000.0, k};
  }
  const auto back = io::GridFromJson(io::GridToJson(g));
  EXPECT_EQ(back, g);
}

TEST(GridJson, HeightsAreMillimetres) {
  terrain::SteppableGrid g(0.01, {0, 0}, 2, 1);
  g.at(0, 0) = {true, 0.01234, 0};
  const auto back = io::GridFromJson(io::GridToJson(g));
  EXPECT_DOUBLE_EQ(back.at(0, 0).height, 0.012);
  EXPECT_FALSE(back.at(1, 0).steppable);
}

TEST(GridJson, RunsMustCoverTheGrid) {
  const std::string msg = ErrorOf([] {
    io::GridFromJson(R"({"resolution": 0.01, "origin": [0, 0], "nx": 2, "ny": 2,
                         "cells": [{"n": 3, "steppable": false, "height_mm": 0, "plane_id": -1}]})");
  });
  EXPECT_NE(msg.find("cover"), std::string::npos);
}

TEST(PlanRequestJson, InlineAndFileGrids) {
  const auto req = io::PlanRequestFromJson(
      io::ReadFile(footfall::testing::ScenarioDir() / "plan_request.json"),
      footfall::testing::ScenarioDir());
  EXPECT_GT(req.grid.SteppableCount(), 0u);
  EXPECT_EQ(req.q_init.side, planner::Side::kLeft);
  EXPECT_EQ(req.config.max_steps, 4);

  terrain::SteppableGrid g(0.01, {0, 0}, 3, 3);
  const std::string inline_req = R"({"grid": )" + io::GridToJson(g) +
                                 R"(, "q_init": {"side": "right", "x": 0.1, "y": 0.2, "yaw": 0.0}})";
  const auto r2 = io::PlanRequestFromJson(inline_req);
  EXPECT_EQ(r2.grid, g);
  EXPECT_EQ(r2.q_init.side, planner::Side::kRight);
  ErrorOf([] { io::PlanRequestFromJson(R"({"q_init": {"side": "left", "x": 0, "y": 0, "yaw": 0}})"); });
}

TEST(PlanResponseJson, StepsRoundTripThroughFootstepReader) {
  planner::PlanResult r;
  for (int i = 0; i < 4; ++i) {
    planner::Footstep f;
    f.side = i % 2 ? planner::Side::kLeft : planner::Side::kRight;
    f.x = 0.25 * (i + 1);
    f.y = i % 2 ? 0.1 : -0.1;
    f.yaw = 0.01 * i;
    r.path.steps.push_back(f);
  }
  r.path.score = 12.5;
  const auto steps = io::FootstepsFromJson(io::PlanResponseToJson(r));
  ASSERT_EQ(steps.size(), 4u);
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(steps[i].side, r.path.steps[i].side);
    EXPECT_DOUBLE_EQ(steps[i].x, r.path.steps[i].x);
    EXPECT_DOUBLE_EQ(steps[i].yaw, r.path.steps[i].yaw);
  }
}

TEST(ReportJson, NanLatencyIsNull) {
  sim::RunReport r;
  r.scenario = "x";
  r.replan_events.push_back({1.0, std::numeric_limits<double>::quiet_NaN(), 0.115, "RetargetTooLate"});
  const std::string text = io::ReportToJson(r);
  EXPECT_NE(text.find("null"), std::string::npos);
  EXPECT_EQ(text.find("nan"), std::string::npos);
}

TEST(TelemetryCsv, RoundTripIsExact) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<sim::TelemetryRow> rows(50);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto& r = rows[i];
    r.t = 0.002 * i;
    r.com_x = u(rng);
    r.com_vy = u(rng);
    r.zmp_meas_y = u(rng);
    r.swing_z = u(rng);
    r.sdb_revision = i / 7;
    r.support_phase = static_cast<sim::SupportPhase>(i % 4);
    r.w_left = 0.5 + 0.5 * u(rng);
    r.w_right = 1.0 - r.w_left;
  }
  const std::string csv = io::TelemetryToCsv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "t,com_x,com_y,com_vx,com_vy,zmp_ref_x,zmp_ref_y,zmp_meas_x,zmp_meas_y,swing_x,"
            "swing_y,swing_z,sdb_revision,support_phase,czmp_x,czmp_y,w_left,w_right");
  const auto back = io::TelemetryFromCsv(csv);
  ASSERT_EQ(back.size(), rows.size());
  EXPECT_EQ(io::TelemetryToCsv(back), csv);
  EXPECT_EQ(back[13].com_x, rows[13].com_x);
  EXPECT_EQ(back[13].support_phase, rows[13].support_phase);
}

TEST(TelemetryCsv, RejectsBadInput) {
  ErrorOf([] { io::TelemetryFromCsv("t,x\n1,2\n"); });
  const std::string header = io::TelemetryToCsv({});
  const std::string msg = ErrorOf([&] { io::TelemetryFromCsv(header + "1,2,3\n"); });
  EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
  ErrorOf([&] {
    io::TelemetryFromCsv(header + "0,0,0,0,0,0,0,0,0,0,0,0,1,flying,0,0,0.5,0.5\n");
  });
}

TEST(Files, AtomicWriteLeavesNoTemporary) {
  const fs::path dir = TempDir("atomic");
  const fs::path f = dir / "nested" / "out.json";
  io::WriteFileAtomic(f, "{\"a\": 1}\n");
  io::WriteFileAtomic(f, "{\"a\": 2}\n");
  EXPECT_EQ(io::ReadFile(f), "{\"a\": 2}\n");
  int entries = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir / "nested")) ++entries;
  EXPECT_EQ(entries, 1);
  fs::remove_all(dir);
}

TEST(Files, MissingFileIsAnError) {
  EXPECT_THROW(io::ReadFile("/nonexistent/footfall/file.json"), std::runtime_error);
}
