#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "footfall/planner/planner.hpp"
#include "footfall/sim/scenario.hpp"
#include "footfall/sim/simulator.hpp"
#include "footfall/terrain/steppable_grid.hpp"

namespace footfall::io {

/// Scenario JSON. Unknown keys, wrong types and malformed text throw
/// kParseError with the offending key path in the message. `overrides` are
/// "dotted.key=value" strings applied after the file; each key must exist in
/// the scenario tree. Values parse as JSON, falling back to a plain string.
sim::Scenario ScenarioFromJson(std::string_view text,
                               std::span<const std::string> overrides = {});
std::string ScenarioToJson(const sim::Scenario& scenario);

/// Grid JSON with run-length-encoded cells; heights are integer millimetres.
std::string GridToJson(const terrain::SteppableGrid& grid);
terrain::SteppableGrid GridFromJson(std::string_view text);

std::string FootstepToJson(const planner::Footstep& step);

struct PlanRequest {
  terrain::SteppableGrid grid;
  planner::Footstep q_init;
  planner::PlannerConfig config;
  planner::ReachabilityModel reach;
  planner::Footprint footprint;
  double ring_margin = 0.02;
};

/// Request JSON: {grid | grid_file, q_init, planner, reach, footprint}.
/// A relative grid_file resolves against `base_dir`.
PlanRequest PlanRequestFromJson(std::string_view text,
                                const std::filesystem::path& base_dir = {});
std::string PlanResponseToJson(const planner::PlanResult& result);

std::string ReportToJson(const sim::RunReport& report);

/// Footsteps with their sequence order, read from a plan response ("steps")
/// or a run report ("touchdowns").
std::vector<planner::Footstep> FootstepsFromJson(std::string_view text);

std::string TelemetryToCsv(std::span<const sim::TelemetryRow> rows);
std::vector<sim::TelemetryRow> TelemetryFromCsv(std::string_view text);

/// Writes through a temporary file in the same directory and renames it into
/// place, so readers never observe a partial file.
void WriteFileAtomic(const std::filesystem::path& path, std::string_view contents);
std::string ReadFile(const std::filesystem::path& path);

}  // namespace footfall::io
