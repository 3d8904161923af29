#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "footfall/gait/lipm.hpp"
#include "footfall/gait/preview_control.hpp"
#include "footfall/planner/planner.hpp"
#include "footfall/planner/footstep.hpp"
#include "footfall/terrain/mapping.hpp"
#include "footfall/terrain/synthetic.hpp"

namespace footfall::sim {

/// Stage durations of one perception cycle when the stages run back to back.
struct LatencyModel {
  double depth_acquire = 0.033;
  double mapping = 0.067;
  double planning = 0.005;
  double comm = 0.010;

  void Validate() const;
  double SerialTotal() const { return depth_acquire + mapping + planning + comm; }
};

struct WalkConfig {
  double stride = 0.35;        // upper bound of the forward reach
  double step_time = 0.5;
  double dsp_fraction = 0.1;
  double speed_target = 0.3;
  double swing_apex = 0.05;
  Eigen::Vector2d start{0.0, 0.0};  // midpoint of the initial feet
  double stance_width = 0.2;
  double start_delay = 1.0;    // first plan applied -> first step
  double course_end = 3.0;     // x a touchdown must reach
};

/// Moves stone `stone_id` by `displacement`, either at an absolute `time` or
/// once the swing landing on that stone passes `swing_phase` (0..1).
struct Disturbance {
  int stone_id = 0;
  Eigen::Vector2d displacement = Eigen::Vector2d::Zero();
  std::optional<double> time;
  std::optional<double> swing_phase;
};

struct StabilizationConfig {
  double mass = 60.0;
  double natural_freq_hz = 3.0;
  double damping_ratio = 0.05;
  double target_damping_ratio = 0.7;
  double cp_gain = 3.0;
};

struct SimConfig {
  double max_time = 60.0;
  double settle_time = 1.0;
  double fall_margin = 0.01;
  double fall_duration = 0.05;
  double touchdown_height_tol = 0.02;
  double roi_rear_offset = 0.2;  // ROI starts this far behind the feet
  double camera_height = 1.1;
  double camera_pitch_deg = 60.0;
};

struct Scenario {
  int schema_version = 1;
  std::string name;
  std::vector<terrain::TerrainBox> terrain;
  WalkConfig walk;
  std::vector<Disturbance> disturbances;
  LatencyModel latency;
  double cloud_sigma = 0.002;
  double cloud_density = 150000.0;
  std::uint64_t seed = 0;
  terrain::MappingConfig mapping;
  planner::PlannerConfig planner{.max_iterations = 6000};
  planner::ReachabilityModel reach;
  planner::Footprint footprint;
  double footprint_margin = 0.01;  // planning footprint inflation per side
  double safety_ring_margin = 0.02;
  gait::LipmParams lipm;
  gait::PreviewWeights preview;
  StabilizationConfig stabilization;
  bool replan_enabled = true;
  double replan_limit = 0.5;
  double retarget_window = 0.1;
  SimConfig sim;

  /// Throws kInvalidArgument or kInvalidEvent describing the first problem.
  void Validate() const;
  /// Footprint the planner checks against the perceived grid.
  planner::Footprint PlanningFootprint() const {
    return {footprint.length + 2.0 * footprint_margin,
            footprint.width + 2.0 * footprint_margin};
  }
  /// Reach with the forward limit capped by the stride.
  planner::ReachabilityModel EffectiveReach() const;
};

/// Fine-grid profile for narrow terrain: 5 mm cells and a 0.6 x 1.2 m ROI.
void ApplyNarrowPathProfile(Scenario& scenario);

}  // namespace footfall::sim
