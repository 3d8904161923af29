#pragma once

#include <array>
#include <vector>

#include <Eigen/Core>

#include "footfall/planner/footstep.hpp"

namespace footfall::gait {

/// Quintic on [t0, t1], stored in local time tau = t - t0. Evaluation clamps
/// t to the interval.
struct Quintic {
  double t0 = 0.0;
  double t1 = 0.0;
  std::array<double, 6> c{};

  static Quintic FromBoundary(double t0, double t1, double p0, double v0,
                              double a0, double p1, double v1, double a1);
  double Position(double t) const;
  double Velocity(double t) const;
  double Acceleration(double t) const;
};

/// Piecewise quintic profile (one or more consecutive segments).
struct Profile {
  std::vector<Quintic> segments;

  const Quintic& SegmentAt(double t) const;
  double Position(double t) const { return SegmentAt(t).Position(t); }
  double Velocity(double t) const { return SegmentAt(t).Velocity(t); }
  double Acceleration(double t) const { return SegmentAt(t).Acceleration(t); }
};

/// Swing-foot path: per-axis quintics with zero boundary velocity and
/// acceleration. The vertical axis rises to `apex_height` above the higher
/// endpoint at mid-swing and descends to touchdown.
struct SwingTrajectory {
  planner::Footstep start;
  planner::Footstep target;
  double apex_height = 0.05;
  double t0 = 0.0;
  double duration = 0.0;
  Profile x, y, z, yaw;

  double end_time() const { return t0 + duration; }
  double mid_time() const { return t0 + 0.5 * duration; }
  Eigen::Vector3d Position(double t) const {
    return {x.Position(t), y.Position(t), z.Position(t)};
  }
  Eigen::Vector3d Velocity(double t) const {
    return {x.Velocity(t), y.Velocity(t), z.Velocity(t)};
  }
  Eigen::Vector3d Acceleration(double t) const {
    return {x.Acceleration(t), y.Acceleration(t), z.Acceleration(t)};
  }
  double Yaw(double t) const { return yaw.Position(t); }
};

SwingTrajectory MakeSwingTrajectory(const planner::Footstep& start,
                                    const planner::Footstep& target, double t0,
                                    double duration, double apex_height = 0.05);

/// Re-plans the remaining swing towards `new_target`, matching position,
/// velocity and acceleration at `now` and keeping the touchdown time. Throws
/// kRetargetTooLate when less than `min_window` seconds remain, and
/// kInvalidArgument if `now` is outside the swing.
SwingTrajectory RetargetSwing(const SwingTrajectory& current, double now,
                              const planner::Footstep& new_target,
                              double min_window = 0.1);

}  // namespace footfall::gait
