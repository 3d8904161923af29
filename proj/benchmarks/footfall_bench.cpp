#include <benchmark/benchmark.h>

#include <vector>

#include "footfall/cli/cli.hpp"
#include "footfall/gait/preview_control.hpp"
#include "footfall/planner/planner.hpp"
#include "footfall/planner/safety.hpp"
#include "footfall/terrain/mapping.hpp"
#include "footfall/terrain/synthetic.hpp"

using namespace footfall;

namespace {

const terrain::SteppableGrid& Grid() {
  static const terrain::SteppableGrid grid = cli::BenchGrid();
  return grid;
}

void BM_Plan(benchmark::State& state) {
  const auto start = cli::BenchStart();
  const auto scorer = planner::SafetyScorer::ForFootprint(start.footprint);
  planner::PlannerConfig cfg;
  cfg.max_iterations = static_cast<int>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    cfg.seed = seed++;
    benchmark::DoNotOptimize(planner::Plan(Grid(), start, {}, scorer, cfg));
  }
}
BENCHMARK(BM_Plan)->Arg(1000)->Arg(3000)->Unit(benchmark::kMillisecond);

void BM_PlanWallClock(benchmark::State& state) {
  const auto start = cli::BenchStart();
  const auto scorer = planner::SafetyScorer::ForFootprint(start.footprint);
  planner::PlannerConfig cfg;
  cfg.budget_mode = planner::BudgetMode::kWallClock;
  cfg.time_budget = 0.005;
  for (auto _ : state) benchmark::DoNotOptimize(planner::Plan(Grid(), start, {}, scorer, cfg));
}
BENCHMARK(BM_PlanWallClock)->Unit(benchmark::kMillisecond);

void BM_ValidityTest(benchmark::State& state) {
  planner::Footstep f = cli::BenchStart();
  f.x = 0.33;
  f.y = -0.15;
  f.side = planner::Side::kRight;
  for (auto _ : state) {
    planner::Footstep c = f;
    benchmark::DoNotOptimize(planner::ValidityTest(c, Grid()));
  }
}
BENCHMARK(BM_ValidityTest);

void BM_StepScore(benchmark::State& state) {
  const auto scorer = planner::SafetyScorer::ForFootprint({});
  planner::Footstep f;
  f.x = 0.33;
  f.y = -0.15;
  for (auto _ : state) benchmark::DoNotOptimize(scorer.StepScore(f, Grid()));
}
BENCHMARK(BM_StepScore);

void BM_MapTerrain(benchmark::State& state) {
  const auto boxes = cli::BenchScene();
  const auto cloud = terrain::GenerateSyntheticCloud(boxes, 0.002, 150000, 1);
  terrain::MappingConfig cfg;
  cfg.roi.origin = {-0.2, 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(terrain::MapTerrain(cloud, cfg));
  state.counters["points"] = static_cast<double>(cloud.size());
}
BENCHMARK(BM_MapTerrain)->Unit(benchmark::kMillisecond);

void BM_PreviewTick(benchmark::State& state) {
  const gait::LipmParams params;
  const auto gains = gait::ComputePreviewGains(params);
  std::vector<Eigen::Vector2d> ref(gains.preview.size() + 1, Eigen::Vector2d(0.05, 0.1));
  gait::ComState s = gait::ComState::AtRest({0.0, 0.0});
  for (auto _ : state) {
    s = gait::TickCom(s, ref, gains);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_PreviewTick);

void BM_PreviewGains(benchmark::State& state) {
  const gait::LipmParams params;
  for (auto _ : state) benchmark::DoNotOptimize(gait::ComputePreviewGains(params));
}
BENCHMARK(BM_PreviewGains)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
