#include "footfall/sim/scenario.hpp"

#include <algorithm>
#include <set>

#include "footfall/common/error.hpp"

namespace footfall::sim {

void LatencyModel::Validate() const {
  ThrowUnless(depth_acquire >= 0.0 && mapping >= 0.0 && planning >= 0.0 && comm >= 0.0,
              ErrorCode::kInvalidArgument, "latencies must be non-negative");
}

planner::ReachabilityModel Scenario::EffectiveReach() const {
  planner::ReachabilityModel r = reach;
  r.forward.max = std::min(r.forward.max, walk.stride);
  return r;
}

void Scenario::Validate() const {
  ThrowUnless(!terrain.empty(), ErrorCode::kEmptyScene, "scenario has no terrain");
  std::set<int> ids;
  for (const auto& b : terrain) {
    ThrowUnless(ids.insert(b.id).second, ErrorCode::kInvalidArgument,
                "duplicate terrain id " + std::to_string(b.id));
    ThrowUnless(b.size.minCoeff() >= 0.0 && b.size.head<2>().minCoeff() > 0.0,
                ErrorCode::kInvalidArgument,
                "terrain box " + std::to_string(b.id) + " has a degenerate size");
  }
  for (const auto& d : disturbances) {
    ThrowUnless(ids.contains(d.stone_id), ErrorCode::kInvalidEvent,
                "disturbance references unknown stone " + std::to_string(d.stone_id));
    ThrowUnless(d.time.has_value() != d.swing_phase.has_value(),
                ErrorCode::kInvalidEvent,
                "a disturbance needs exactly one of time or swing_phase");
    if (d.swing_phase) {
      ThrowUnless(*d.swing_phase >= 0.0 && *d.swing_phase <= 1.0,
                  ErrorCode::kInvalidEvent, "swing_phase must lie in [0, 1]");
    }
  }
  ThrowUnless(walk.stride > 0.0 && walk.step_time > 0.0 && walk.speed_target > 0.0,
              ErrorCode::kInvalidArgument, "stride, step_time and speed_target must be positive");
  ThrowUnless(walk.dsp_fraction >= 0.0 && walk.dsp_fraction < 0.5,
              ErrorCode::kInvalidArgument, "dsp_fraction must lie in [0, 0.5)");
  ThrowUnless(walk.stance_width > 0.0 && walk.start_delay >= 0.0,
              ErrorCode::kInvalidArgument, "stance_width must be positive");
  ThrowUnless(cloud_sigma >= 0.0 && cloud_density > 0.0, ErrorCode::kInvalidArgument,
              "cloud noise must be non-negative and density positive");
  ThrowUnless(footprint.length > 0.0 && footprint.width > 0.0 && footprint_margin >= 0.0,
              ErrorCode::kInvalidArgument, "footprint must be positive");
  ThrowUnless(replan_limit > 0.0 && retarget_window >= 0.0, ErrorCode::kInvalidArgument,
              "replan limits must be positive");
  ThrowUnless(sim.max_time > 0.0 && sim.fall_duration >= 0.0 && sim.fall_margin >= 0.0,
              ErrorCode::kInvalidArgument, "sim limits must be non-negative");
  ThrowUnless(stabilization.mass > 0.0 && stabilization.natural_freq_hz > 0.0 &&
                  stabilization.damping_ratio >= 0.0,
              ErrorCode::kInvalidArgument, "compliant model parameters invalid");
  latency.Validate();
  mapping.Validate();
  planner.Validate();
  EffectiveReach().Validate();
  lipm.Validate();
}

void ApplyNarrowPathProfile(Scenario& scenario) {
  scenario.mapping.resolution = 0.005;
  scenario.mapping.voxel_downsample = 0.005;
  scenario.mapping.roi.width = 0.6;
  scenario.mapping.roi.length = 1.2;
}

}  // namespace footfall::sim
