#pragma once

#include <utility>

#include <Eigen/Core>

#include "footfall/common/geometry.hpp"

namespace footfall::planner {

enum class Side { kLeft, kRight };

inline Side Opposite(Side s) { return s == Side::kLeft ? Side::kRight : Side::kLeft; }
inline const char* ToString(Side s) { return s == Side::kLeft ? "left" : "right"; }

struct Footprint {
  double length = 0.24;
  double width = 0.13;

  bool operator==(const Footprint&) const = default;
};

struct Footstep {
  Side side = Side::kLeft;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double yaw = 0.0;
  Footprint footprint;

  Pose2 pose() const { return {x, y, yaw}; }
  Eigen::Vector2d xy() const { return {x, y}; }
  Eigen::Vector3d position() const { return {x, y, z}; }
  OrientedRect rect() const { return {pose(), footprint.length, footprint.width}; }

  bool operator==(const Footstep&) const = default;
};

struct Range {
  double min = 0.0;
  double max = 0.0;

  bool Contains(double v, double tol = 1e-12) const {
    return v >= min - tol && v <= max + tol;
  }
};

/// Region a swing foot may reach from a support foot, in the support frame.
/// `lateral` is measured toward the swing side, so it stays positive for both
/// feet; `yaw` is the relative heading.
struct ReachabilityModel {
  Range forward{-0.05, 0.35};
  Range lateral{0.15, 0.30};
  Range yaw{DegToRad(-20.0), DegToRad(20.0)};
  double max_height_delta = 0.15;

  /// Throws kInvalidArgument when a range is inverted or lateral.min <= 0.
  void Validate() const;
};

/// Offset of `candidate` relative to `support`: (forward, lateral toward the
/// swing side, relative yaw).
struct StepOffset {
  double forward = 0.0;
  double lateral = 0.0;
  double yaw = 0.0;
};

StepOffset RelativeOffset(const Footstep& support, const Footstep& candidate);

/// Places a footstep of the opposite side at the given offset from `support`.
Footstep ApplyOffset(const Footstep& support, const StepOffset& offset);

/// Planar reach check (forward, lateral, yaw, and opposite side). Height is
/// checked separately once the landing height is known.
bool WithinReach(const ReachabilityModel& reach, const Footstep& support,
                 const Footstep& candidate);

}  // namespace footfall::planner
