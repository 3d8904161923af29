#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "footfall/planner/footstep.hpp"
#include "footfall/terrain/steppable_grid.hpp"
#include "footfall/terrain/synthetic.hpp"

namespace footfall::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // run failed or budget missed
inline constexpr int kExitUsage = 2;    // bad input, parse or config error

/// Entry point of the `footfall` tool. Output and diagnostics go to the
/// given streams so tests can drive it in-process.
int Main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Stepping-stone layout used by `bench` when no grid file is given.
std::vector<terrain::TerrainBox> BenchScene();
/// 1 x 2 m ROI at 1 cm (100 x 200 cells) rasterised from BenchScene().
terrain::SteppableGrid BenchGrid();
/// Left foot on the start pad of BenchScene().
planner::Footstep BenchStart();

}  // namespace footfall::cli
