#include "footfall/cli/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "footfall/common/error.hpp"
#include "footfall/io/json_io.hpp"
#include "footfall/planner/planner.hpp"
#include "footfall/planner/safety.hpp"
#include "footfall/sim/simulator.hpp"
#include "footfall/terrain/mapping.hpp"

namespace footfall::cli {

namespace fs = std::filesystem;

std::vector<terrain::TerrainBox> BenchScene() {
  std::vector<terrain::TerrainBox> boxes;
  boxes.push_back({0, {-0.05, 0.0, -0.05}, {0.36, 0.7, 0.1}});
  int id = 1;
  for (int k = 0; 0.33 + 0.25 * k < 1.8; ++k) {
    const double y = k % 2 == 0 ? -0.15 : 0.15;
    boxes.push_back({id++, {0.33 + 0.25 * k, y, -0.05}, {0.32, 0.26, 0.1}});
  }
  return boxes;
}

terrain::SteppableGrid BenchGrid() {
  return terrain::RasterizeTopFaces(BenchScene(), 0.01, {-0.2, -0.5}, 200, 100);
}

planner::Footstep BenchStart() {
  planner::Footstep f;
  f.side = planner::Side::kLeft;
  f.x = 0.0;
  f.y = 0.1;
  return f;
}

namespace {

struct Context {
  std::ostream& out;
  std::ostream& err;
};

fs::path ResolveOutDir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("FOOTFALL_OUT_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  return "out";
}

double Percentile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const auto i = static_cast<std::size_t>(std::ceil(q * static_cast<double>(v.size()))) - 1;
  return v[std::min(i, v.size() - 1)];
}

std::string FormatDouble(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

// Column table written as CSV or as a JSON object of arrays.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string Csv() const {
    std::string s;
    for (std::size_t i = 0; i < header.size(); ++i) s += (i ? "," : "") + header[i];
    s += '\n';
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + r[i];
      s += '\n';
    }
    return s;
  }
  std::string Json() const {
    nlohmann::json j = nlohmann::json::object();
    for (std::size_t c = 0; c < header.size(); ++c) {
      nlohmann::json col = nlohmann::json::array();
      for (const auto& r : rows) {
        const std::string& cell = r[c];
        char* end = nullptr;
        const double v = std::strtod(cell.c_str(), &end);
        if (!cell.empty() && end == cell.c_str() + cell.size()) {
          col.push_back(v);
        } else {
          col.push_back(cell);
        }
      }
      j[header[c]] = col;
    }
    return j.dump(2) + "\n";
  }
  std::string Render(const std::string& format) const {
    return format == "json" ? Json() : Csv();
  }
};

sim::Scenario LoadScenario(const std::string& path, std::vector<std::string> overrides,
                           const std::optional<std::uint64_t>& seed) {
  if (seed) overrides.push_back("seed=" + std::to_string(*seed));
  sim::Scenario s = io::ScenarioFromJson(io::ReadFile(path), overrides);
  if (s.name.empty()) s.name = fs::path(path).stem().string();
  s.Validate();
  return s;
}

int CmdRun(Context& ctx, const std::string& path, const std::vector<std::string>& overrides,
           const std::optional<std::uint64_t>& seed, const fs::path& out_dir,
           bool telemetry) {
  const sim::Scenario scenario = LoadScenario(path, overrides, seed);
  sim::RunReport report = sim::Run(scenario, {.record_telemetry = telemetry});
  const fs::path report_path = out_dir / (scenario.name + "_report.json");
  if (telemetry) {
    const fs::path csv = out_dir / (scenario.name + "_telemetry.csv");
    io::WriteFileAtomic(csv, io::TelemetryToCsv(report.telemetry));
    report.telemetry_files.push_back(csv.filename().string());
  }
  io::WriteFileAtomic(report_path, io::ReportToJson(report));

  ctx.out << scenario.name << ": " << (report.success ? "success" : "FAILED");
  if (!report.success) ctx.out << " (" << report.failure_reason << ")";
  ctx.out << ", mean speed " << std::fixed << std::setprecision(3) << report.mean_speed
          << " m/s, " << report.touchdowns.size() << " touchdowns, "
          << report.replan_events.size() << " replan events\n";
  for (const auto& e : report.replan_events) {
    ctx.out << "  replan t=" << e.trigger_t << " latency=" << e.latency << " " << e.outcome
            << "\n";
  }
  ctx.out.unsetf(std::ios::floatfield);
  ctx.out << "report: " << report_path.string() << "\n";
  return report.success ? kExitOk : kExitFailure;
}

int CmdPlan(Context& ctx, const std::string& path, const std::optional<std::uint64_t>& seed,
            const fs::path& out_dir, const std::string& format) {
  io::PlanRequest req = io::PlanRequestFromJson(io::ReadFile(path), fs::path(path).parent_path());
  if (seed) req.config.seed = *seed;
  const auto scorer = planner::SafetyScorer::ForFootprint(req.footprint, req.ring_margin);
  planner::PlanResult result;
  try {
    result = planner::Plan(req.grid, req.q_init, req.reach, scorer, req.config);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNoFeasiblePath) throw;
    ctx.err << e.what() << "\n";
    return kExitFailure;
  }
  const fs::path stem = out_dir / fs::path(path).stem();
  fs::path file;
  if (format == "csv") {
    Table t{{"seq", "side", "x", "y", "z", "yaw"}, {}};
    for (std::size_t i = 0; i < result.path.steps.size(); ++i) {
      const auto& s = result.path.steps[i];
      t.rows.push_back({std::to_string(i), planner::ToString(s.side), FormatDouble(s.x),
                        FormatDouble(s.y), FormatDouble(s.z), FormatDouble(s.yaw)});
    }
    file = stem.string() + "_plan.csv";
    io::WriteFileAtomic(file, t.Csv());
  } else {
    file = stem.string() + "_plan.json";
    io::WriteFileAtomic(file, io::PlanResponseToJson(result));
  }
  ctx.out << result.path.length() << " steps, score " << result.path.score << ", "
          << result.iterations << " iterations, " << result.elapsed_us << " us"
          << (result.short_path ? " (short)" : "") << "\nplan: " << file.string() << "\n";
  return kExitOk;
}

int CmdMap(Context& ctx, const std::string& path, const std::vector<std::string>& overrides,
           const std::optional<std::uint64_t>& seed, const fs::path& out_dir,
           const std::string& format) {
  const sim::Scenario s = LoadScenario(path, overrides, seed);
  terrain::MappingConfig cfg = s.mapping;
  cfg.roi.origin = {s.walk.start.x() - s.sim.roi_rear_offset, s.walk.start.y()};
  cfg.seed = s.seed;
  const auto cloud =
      terrain::GenerateSyntheticCloud(s.terrain, s.cloud_sigma, s.cloud_density, s.seed);
  const auto t0 = std::chrono::steady_clock::now();
  const auto result = terrain::MapTerrain(cloud, cfg);
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  fs::path file = out_dir / (s.name + "_grid." + format);
  if (format == "csv") {
    Table t{{"ix", "iy", "x", "y", "steppable", "height", "plane_id"}, {}};
    const auto& g = result.grid;
    for (int iy = 0; iy < g.ny(); ++iy) {
      for (int ix = 0; ix < g.nx(); ++ix) {
        const auto& c = g.at(ix, iy);
        const auto p = g.CellCenter(ix, iy);
        t.rows.push_back({std::to_string(ix), std::to_string(iy), FormatDouble(p.x()),
                          FormatDouble(p.y()), c.steppable ? "1" : "0", FormatDouble(c.height),
                          std::to_string(c.plane_id)});
      }
    }
    io::WriteFileAtomic(file, t.Csv());
  } else {
    io::WriteFileAtomic(file, io::GridToJson(result.grid));
  }
  ctx.out << result.cropped_points << " points in ROI, " << result.downsampled_points
          << " after downsampling, " << result.planes.size() << " planes, "
          << result.grid.SteppableCount() << " steppable cells, " << ms << " ms\n";
  for (std::size_t i = 0; i < result.planes.size(); ++i) {
    ctx.out << "  plane " << i << ": height " << result.planes[i].mean_height << ", tilt "
            << result.planes[i].TiltDeg() << " deg, " << result.planes[i].inliers.size()
            << " inliers\n";
  }
  ctx.out << "grid: " << file.string() << "\n";
  return kExitOk;
}

int CmdBench(Context& ctx, int iterations, const std::string& grid_file, bool empty,
             const std::string& mode, double budget_ms, std::uint64_t seed,
             const std::string& format, const fs::path& out_dir, bool write) {
  if (iterations < 100) {
    ctx.err << "bench needs at least 100 iterations\n";
    return kExitUsage;
  }
  terrain::SteppableGrid grid;
  if (!grid_file.empty()) {
    grid = io::GridFromJson(io::ReadFile(grid_file));
  } else if (empty) {
    grid = terrain::SteppableGrid(0.01, {-0.2, -0.5}, 200, 100);
  } else {
    grid = BenchGrid();
  }
  planner::PlannerConfig cfg;
  cfg.budget_mode =
      mode == "wall_clock" ? planner::BudgetMode::kWallClock : planner::BudgetMode::kIterations;
  const planner::ReachabilityModel reach;
  const planner::Footstep start = BenchStart();
  const auto scorer = planner::SafetyScorer::ForFootprint(start.footprint);

  auto plan_once = [&](std::uint64_t s) -> std::optional<planner::FootstepPath> {
    cfg.seed = s;
    try {
      return planner::Plan(grid, start, reach, scorer, cfg).path;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNoFeasiblePath) throw;
      return std::nullopt;
    }
  };

  std::vector<double> ms;
  ms.reserve(static_cast<std::size_t>(iterations));
  int failed = 0;
  for (int i = 0; i < iterations; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto path = plan_once(seed + static_cast<std::uint64_t>(i));
    ms.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                     .count());
    failed += !path;
  }
  const double p50 = Percentile(ms, 0.50);
  const double p95 = Percentile(ms, 0.95);
  const double max = *std::max_element(ms.begin(), ms.end());
  const bool pass = p95 <= budget_ms;

  std::optional<bool> repeatable;
  if (cfg.budget_mode == planner::BudgetMode::kIterations) {
    const auto a = plan_once(seed);
    const auto b = plan_once(seed);
    repeatable = a.has_value() == b.has_value() &&
                 (!a || (a->steps == b->steps && a->score == b->score));
  }

  Table t{{"iterations", "p50_ms", "p95_ms", "max_ms", "budget_ms", "pass", "no_path"}, {}};
  t.rows.push_back({std::to_string(iterations), FormatDouble(p50), FormatDouble(p95),
                    FormatDouble(max), FormatDouble(budget_ms), pass ? "1" : "0",
                    std::to_string(failed)});
  ctx.out << std::fixed << std::setprecision(3) << "plan calls: " << iterations
          << " (" << grid.nx() << "x" << grid.ny() << " cells, " << failed << " without a path)\n"
          << "p50 " << p50 << " ms, p95 " << p95 << " ms, max " << max << " ms\n"
          << "budget " << budget_ms << " ms: " << (pass ? "PASS" : "FAIL") << "\n";
  ctx.out.unsetf(std::ios::floatfield);
  if (repeatable) ctx.out << "repeat with same seed: " << (*repeatable ? "identical" : "DIFFERENT") << "\n";
  if (write) {
    const fs::path file = out_dir / ("bench." + format);
    io::WriteFileAtomic(file, t.Render(format));
    ctx.out << "report: " << file.string() << "\n";
  }
  return pass && repeatable.value_or(true) ? kExitOk : kExitFailure;
}

int CmdExport(Context& ctx, const std::string& path, const std::string& kind,
              const std::string& format, const fs::path& out_dir) {
  Table t;
  if (kind == "footsteps") {
    const auto steps = io::FootstepsFromJson(io::ReadFile(path));
    t.header = {"seq", "side", "x", "y", "z", "yaw", "gradient"};
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const auto& s = steps[i];
      const double g = steps.size() > 1 ? static_cast<double>(i) / (steps.size() - 1) : 0.0;
      t.rows.push_back({std::to_string(i), planner::ToString(s.side), FormatDouble(s.x),
                        FormatDouble(s.y), FormatDouble(s.z), FormatDouble(s.yaw),
                        FormatDouble(g)});
    }
  } else {
    const auto rows = io::TelemetryFromCsv(io::ReadFile(path));
    if (kind == "zmp") {
      t.header = {"t",          "zmp_ref_x", "zmp_meas_x", "com_x",
                  "zmp_ref_y", "zmp_meas_y", "com_y"};
      for (const auto& r : rows) {
        t.rows.push_back({FormatDouble(r.t), FormatDouble(r.zmp_ref_x),
                          FormatDouble(r.zmp_meas_x), FormatDouble(r.com_x),
                          FormatDouble(r.zmp_ref_y), FormatDouble(r.zmp_meas_y),
                          FormatDouble(r.com_y)});
      }
    } else {
      t.header = {"t", "swing_x", "swing_y", "swing_z", "sdb_revision", "support_phase"};
      for (const auto& r : rows) {
        t.rows.push_back({FormatDouble(r.t), FormatDouble(r.swing_x), FormatDouble(r.swing_y),
                          FormatDouble(r.swing_z), std::to_string(r.sdb_revision),
                          sim::ToString(r.support_phase)});
      }
    }
  }
  const fs::path file = out_dir / (fs::path(path).stem().string() + "_" + kind + "." + format);
  io::WriteFileAtomic(file, t.Render(format));
  ctx.out << t.rows.size() << " rows: " << file.string() << "\n";
  return kExitOk;
}

}  // namespace

int Main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx{out, err};
  CLI::App app{"Perception-driven footstep planning and walking simulation"};
  app.name("footfall");
  app.require_subcommand(1);

  std::string input, out_flag, format, kind, grid_file, mode = "iterations";
  std::vector<std::string> overrides;
  std::uint64_t seed_value = 0;
  int iterations = 1000;
  double budget_ms = 10.0;
  bool empty = false, no_telemetry = false, write_bench = false;

  auto add_common = [&](CLI::App* sub, bool with_format) {
    sub->add_option("--out", out_flag, "Output directory (default $FOOTFALL_OUT_DIR or ./out)");
    if (with_format) {
      sub->add_option("--format", format, "Output format")
          ->check(CLI::IsMember({"json", "csv"}));
    }
  };

  auto* run = app.add_subcommand("run", "Simulate a scenario and write its report and telemetry");
  run->add_option("scenario", input, "Scenario JSON")->required();
  run->add_option("--set", overrides, "Override a scenario key (dotted.key=value)");
  auto* run_seed = run->add_option("--seed", seed_value, "Seed for every stochastic stage");
  run->add_flag("--no-telemetry", no_telemetry, "Skip the telemetry CSV");
  add_common(run, false);

  auto* plan = app.add_subcommand("plan", "Plan footsteps on a stored grid");
  plan->add_option("request", input, "Plan request JSON")->required();
  auto* plan_seed = plan->add_option("--seed", seed_value, "Planner seed");
  add_common(plan, true);

  auto* map = app.add_subcommand("map", "Map a scenario's terrain from the start pose");
  map->add_option("scenario", input, "Scenario JSON")->required();
  map->add_option("--set", overrides, "Override a scenario key (dotted.key=value)");
  auto* map_seed = map->add_option("--seed", seed_value, "Cloud and RANSAC seed");
  add_common(map, true);

  auto* bench = app.add_subcommand("bench", "Time plan calls on a 1 x 2 m grid");
  bench->add_option("--iterations", iterations, "Number of plan calls (>= 100)");
  bench->add_option("--grid", grid_file, "Grid JSON to plan on instead of the built-in one");
  bench->add_flag("--empty", empty, "Plan on a grid with no steppable cells");
  bench->add_option("--mode", mode, "Planner budget mode")
      ->check(CLI::IsMember({"iterations", "wall_clock"}));
  bench->add_option("--budget-ms", budget_ms, "p95 budget for PASS");
  bench->add_option("--seed", seed_value, "Seed of the first call");
  bench->add_flag("--write", write_bench, "Also write the summary to the output directory");
  add_common(bench, true);

  auto* exp = app.add_subcommand("export", "Turn telemetry or plans into plot-ready columns");
  exp->add_option("input", input, "Telemetry CSV, plan JSON or run report")->required();
  exp->add_option("--kind", kind, "zmp | swing | footsteps")->required();
  add_common(exp, true);

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    const auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front();
    err << e.what() << "\n";
    if (sub == nullptr) err << app.help();
    return kExitUsage;
  }
  // export defaults to CSV, the others to JSON.
  if (format.empty()) format = exp->parsed() ? "csv" : "json";

  const fs::path out_dir = ResolveOutDir(out_flag);
  auto seed_of = [&](const CLI::Option* o) -> std::optional<std::uint64_t> {
    if (o->count() == 0) return std::nullopt;
    return seed_value;
  };

  try {
    if (run->parsed()) {
      return CmdRun(ctx, input, overrides, seed_of(run_seed), out_dir, !no_telemetry);
    }
    if (plan->parsed()) return CmdPlan(ctx, input, seed_of(plan_seed), out_dir, format);
    if (map->parsed()) return CmdMap(ctx, input, overrides, seed_of(map_seed), out_dir, format);
    if (bench->parsed()) {
      return CmdBench(ctx, iterations, grid_file, empty, mode, budget_ms, seed_value, format,
                      out_dir, write_bench);
    }
    if (exp->parsed()) {
      if (kind != "zmp" && kind != "swing" && kind != "footsteps") {
        err << "unknown export kind '" << kind << "' (expected zmp, swing or footsteps)\n";
        return kExitUsage;
      }
      return CmdExport(ctx, input, kind, format, out_dir);
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace footfall::cli
