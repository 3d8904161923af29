#include "footfall/gait/swing_trajectory.hpp"

#include <algorithm>
#include <cmath>

#include "footfall/common/error.hpp"

namespace footfall::gait {

Quintic Quintic::FromBoundary(double t0, double t1, double p0, double v0,
                              double a0, double p1, double v1, double a1) {
  ThrowUnless(t1 > t0, ErrorCode::kInvalidArgument, "quintic needs t1 > t0");
  const double T = t1 - t0;
  const double T2 = T * T, T3 = T2 * T, T4 = T3 * T, T5 = T4 * T;
  const double h = p1 - p0;
  Quintic q;
  q.t0 = t0;
  q.t1 = t1;
  q.c[0] = p0;
  q.c[1] = v0;
  q.c[2] = 0.5 * a0;
  q.c[3] = (20.0 * h - (8.0 * v1 + 12.0 * v0) * T - (3.0 * a0 - a1) * T2) / (2.0 * T3);
  q.c[4] = (-30.0 * h + (14.0 * v1 + 16.0 * v0) * T + (3.0 * a0 - 2.0 * a1) * T2) /
           (2.0 * T4);
  q.c[5] = (12.0 * h - 6.0 * (v1 + v0) * T + (a1 - a0) * T2) / (2.0 * T5);
  return q;
}

double Quintic::Position(double t) const {
  const double s = std::clamp(t, t0, t1) - t0;
  return c[0] + s * (c[1] + s * (c[2] + s * (c[3] + s * (c[4] + s * c[5]))));
}

double Quintic::Velocity(double t) const {
  const double s = std::clamp(t, t0, t1) - t0;
  return c[1] + s * (2.0 * c[2] + s * (3.0 * c[3] + s * (4.0 * c[4] + s * 5.0 * c[5])));
}

double Quintic::Acceleration(double t) const {
  const double s = std::clamp(t, t0, t1) - t0;
  return 2.0 * c[2] + s * (6.0 * c[3] + s * (12.0 * c[4] + s * 20.0 * c[5]));
}

const Quintic& Profile::SegmentAt(double t) const {
  for (const auto& s : segments) {
    if (t < s.t1) return s;
  }
  return segments.back();
}

namespace {

Profile Rest(double t0, double t1, double p0, double p1) {
  return {{Quintic::FromBoundary(t0, t1, p0, 0.0, 0.0, p1, 0.0, 0.0)}};
}

Profile Continue(const Profile& old, double now, double t1, double p1) {
  return {{Quintic::FromBoundary(now, t1, old.Position(now), old.Velocity(now),
                                 old.Acceleration(now), p1, 0.0, 0.0)}};
}

double ApexZ(const planner::Footstep& a, const planner::Footstep& b, double apex) {
  return std::max(a.z, b.z) + apex;
}

}  // namespace

SwingTrajectory MakeSwingTrajectory(const planner::Footstep& start,
                                    const planner::Footstep& target, double t0,
                                    double duration, double apex_height) {
  ThrowUnless(duration > 0.0, ErrorCode::kInvalidArgument,
              "swing duration must be positive");
  SwingTrajectory s;
  s.start = start;
  s.target = target;
  s.apex_height = apex_height;
  s.t0 = t0;
  s.duration = duration;
  const double t1 = t0 + duration, mid = s.mid_time();
  s.x = Rest(t0, t1, start.x, target.x);
  s.y = Rest(t0, t1, start.y, target.y);
  s.yaw = Rest(t0, t1, start.yaw, start.yaw + WrapAngle(target.yaw - start.yaw));
  const double apex = ApexZ(start, target, apex_height);
  s.z.segments = {Quintic::FromBoundary(t0, mid, start.z, 0, 0, apex, 0, 0),
                  Quintic::FromBoundary(mid, t1, apex, 0, 0, target.z, 0, 0)};
  return s;
}

SwingTrajectory RetargetSwing(const SwingTrajectory& current, double now,
                              const planner::Footstep& new_target,
                              double min_window) {
  const double t1 = current.end_time();
  ThrowUnless(now >= current.t0 && now <= t1, ErrorCode::kInvalidArgument,
              "retarget time lies outside the swing");
  ThrowUnless(t1 - now > min_window, ErrorCode::kRetargetTooLate,
              "only " + std::to_string(t1 - now) + " s of swing remain");
  SwingTrajectory s = current;
  s.target = new_target;
  s.x = Continue(current.x, now, t1, new_target.x);
  s.y = Continue(current.y, now, t1, new_target.y);
  const double yaw_now = current.yaw.Position(now);
  s.yaw = Continue(current.yaw, now, t1,
                   yaw_now + WrapAngle(new_target.yaw - yaw_now));
  const double mid = current.mid_time();
  if (now < mid) {
    const double apex = ApexZ(current.start, new_target, current.apex_height);
    s.z.segments = {
        Quintic::FromBoundary(now, mid, current.z.Position(now),
                              current.z.Velocity(now),
                              current.z.Acceleration(now), apex, 0, 0),
        Quintic::FromBoundary(mid, t1, apex, 0, 0, new_target.z, 0, 0)};
  } else {
    s.z = Continue(current.z, now, t1, new_target.z);
  }
  return s;
}

}  // namespace footfall::gait
