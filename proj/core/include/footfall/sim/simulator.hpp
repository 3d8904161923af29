#pragma once

#include <string>
#include <vector>

#include "footfall/planner/footstep.hpp"
#include "footfall/sim/scenario.hpp"

namespace footfall::sim {

enum class SupportPhase { kStand, kDouble, kLeft, kRight };

const char* ToString(SupportPhase phase);

/// One 2 ms control tick.
struct TelemetryRow {
  double t = 0.0;
  double com_x = 0.0, com_y = 0.0, com_vx = 0.0, com_vy = 0.0;
  double zmp_ref_x = 0.0, zmp_ref_y = 0.0;
  double zmp_meas_x = 0.0, zmp_meas_y = 0.0;
  double swing_x = 0.0, swing_y = 0.0, swing_z = 0.0;
  std::uint64_t sdb_revision = 0;
  SupportPhase support_phase = SupportPhase::kStand;
  double czmp_x = 0.0, czmp_y = 0.0;
  double w_left = 0.5, w_right = 0.5;
};

struct ReplanEvent {
  double trigger_t = 0.0;
  double sdb_update_t = 0.0;  // modelled publication time; NaN if never applied
  double latency = 0.0;
  std::string outcome;        // Retargeted, Replanned, RetargetTooLate, ...
};

struct Touchdown {
  int index = 0;
  double t = 0.0;
  planner::Footstep step;
  double coverage = 0.0;
};

struct RunReport {
  std::string scenario;
  std::uint64_t seed = 0;
  bool success = false;
  std::string failure_reason;  // empty on success
  double mean_speed = 0.0;
  bool speed_target_met = false;
  double duration = 0.0;
  int perception_cycles = 0;
  int revision_conflicts = 0;
  std::vector<ReplanEvent> replan_events;
  std::vector<Touchdown> touchdowns;
  std::vector<TelemetryRow> telemetry;  // filled when requested
  std::vector<std::string> telemetry_files;
};

struct RunOptions {
  bool record_telemetry = false;
};

/// Runs the closed loop (terrain, synthetic cloud, mapping, planning, step
/// buffer, gait ticks) on a single-threaded discrete-event clock. Robot
/// failures are reported, not thrown; configuration errors throw.
RunReport Run(const Scenario& scenario, const RunOptions& options = {});

}  // namespace footfall::sim
