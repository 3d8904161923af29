#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <filesystem>
#include <vector>

#include <Eigen/Core>

#include "footfall/planner/footstep.hpp"
#include "footfall/planner/planner.hpp"
#include "footfall/planner/safety.hpp"
#include "footfall/terrain/steppable_grid.hpp"
#include "footfall/terrain/synthetic.hpp"

namespace footfall::testing {

inline std::filesystem::path ScenarioDir() { return FOOTFALL_SCENARIO_DIR; }

/// Two stones 1.5x the default footprint, one stride apart, with the left
/// support foot standing off-grid behind them.
struct TwoStoneFixture {
  std::vector<terrain::TerrainBox> stones;
  terrain::SteppableGrid grid;
  planner::Footstep q_init;
  planner::ReachabilityModel reach;
  planner::PlannerConfig config;

  TwoStoneFixture() {
    const planner::Footprint fp;
    const double sx = 1.5 * fp.length, sy = 1.5 * fp.width;
    stones.push_back({1, {0.25, -0.1, -0.05}, {sx, sy, 0.1}});
    stones.push_back({2, {0.50, 0.1, -0.05}, {sx, sy, 0.1}});
    // Only cells lying wholly on a stone are steppable, so a valid
    // footprint never hangs over a stone edge.
    grid = terrain::SteppableGrid(0.01, {-0.2, -0.4}, 100, 80);
    const double half_cell = 0.5 * grid.resolution() - 1e-9;
    for (int iy = 0; iy < grid.ny(); ++iy) {
      for (int ix = 0; ix < grid.nx(); ++ix) {
        const Eigen::Vector2d c = grid.CellCenter(ix, iy);
        for (const auto& s : stones) {
          if (std::abs(c.x() - s.center.x()) + half_cell <= 0.5 * s.size.x() &&
              std::abs(c.y() - s.center.y()) + half_cell <= 0.5 * s.size.y()) {
            grid.at(ix, iy) = {true, 0.0, 0};
          }
        }
      }
    }
    q_init.side = planner::Side::kLeft;
    q_init.x = 0.0;
    q_init.y = 0.1;
    config.max_steps = 2;
    config.min_steps = 2;
    config.max_iterations = 3000;
  }

  /// Best two-step safety score over a 1 cm / 5 degree placement sweep of
  /// the whole grid, honouring reach and validity for both steps.
  double ExhaustiveTwoStepMaximum(const planner::SafetyScorer& scorer) const {
    struct Placement {
      planner::Footstep step;
      double score;
    };
    auto sweep = [&](planner::Side side) {
      std::vector<Placement> out;
      const auto b = grid.Bounds();
      for (int yaw_deg = -40; yaw_deg <= 40; yaw_deg += 5) {
        for (double x = b.min.x(); x <= b.max.x() + 1e-9; x += 0.01) {
          for (double y = b.min.y(); y <= b.max.y() + 1e-9; y += 0.01) {
            planner::Footstep f;
            f.side = side;
            f.x = x;
            f.y = y;
            f.yaw = yaw_deg * std::numbers::pi / 180.0;
            if (planner::ValidityTest(f, grid)) out.push_back({f, scorer.StepScore(f, grid)});
          }
        }
      }
      std::sort(out.begin(), out.end(),
                [](const Placement& a, const Placement& b) { return a.score > b.score; });
      return out;
    };
    const auto first = sweep(planner::Opposite(q_init.side));
    const auto second = sweep(q_init.side);
    double best = 0.0;
    for (const auto& a : first) {
      if (!planner::WithinReach(reach, q_init, a.step)) continue;
      if (a.score + second.front().score <= best) break;
      for (const auto& b : second) {
        if (planner::WithinReach(reach, a.step, b.step)) {
          best = std::max(best, a.score + b.score);
          break;
        }
      }
    }
    return best;
  }

  /// Stone the footstep centre rests on, or nullptr.
  const terrain::TerrainBox* StoneUnder(const planner::Footstep& f) const {
    for (const auto& s : stones) {
      if (s.TopFace().Contains(f.xy())) return &s;
    }
    return nullptr;
  }
};

}  // namespace footfall::testing
