#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Core>

namespace footfall {

/// Planar pose (x, y, yaw) in the gravity-aligned base frame.
struct Pose2 {
  double x = 0.0;
  double y = 0.0;
  double yaw = 0.0;

  Eigen::Vector2d translation() const { return {x, y}; }

  /// Maps a point expressed in this pose's local frame into the parent frame.
  Eigen::Vector2d ToParent(const Eigen::Vector2d& local) const {
    const double c = std::cos(yaw), s = std::sin(yaw);
    return {x + c * local.x() - s * local.y(), y + s * local.x() + c * local.y()};
  }

  Eigen::Vector2d ToLocal(const Eigen::Vector2d& parent) const {
    const double c = std::cos(yaw), s = std::sin(yaw);
    const double dx = parent.x() - x, dy = parent.y() - y;
    return {c * dx + s * dy, -s * dx + c * dy};
  }
};

inline double DegToRad(double deg) { return deg * std::numbers::pi / 180.0; }
inline double RadToDeg(double rad) { return rad * 180.0 / std::numbers::pi; }

/// Wraps an angle to (-pi, pi].
inline double WrapAngle(double a) {
  a = std::remainder(a, 2.0 * std::numbers::pi);
  if (a <= -std::numbers::pi) a += 2.0 * std::numbers::pi;
  return a;
}

/// Axis-aligned rectangle in the plane.
struct Aabb2 {
  Eigen::Vector2d min{0.0, 0.0};
  Eigen::Vector2d max{0.0, 0.0};

  double Area() const {
    return std::max(0.0, max.x() - min.x()) * std::max(0.0, max.y() - min.y());
  }
  bool Contains(const Eigen::Vector2d& p) const {
    return p.x() >= min.x() && p.x() <= max.x() && p.y() >= min.y() &&
           p.y() <= max.y();
  }
  Eigen::Vector2d Center() const { return 0.5 * (min + max); }
};

/// Rectangle of the given length (along local x) and width (along local y)
/// centred on `pose`.
struct OrientedRect {
  Pose2 pose;
  double length = 0.0;
  double width = 0.0;

  std::array<Eigen::Vector2d, 4> Corners() const {
    const double hl = 0.5 * length, hw = 0.5 * width;
    return {pose.ToParent({hl, hw}), pose.ToParent({-hl, hw}),
            pose.ToParent({-hl, -hw}), pose.ToParent({hl, -hw})};
  }

  Aabb2 Bounds() const;
  double Area() const { return length * width; }
};

using Polygon2 = std::vector<Eigen::Vector2d>;

/// Area of a simple polygon (absolute value of the shoelace sum).
double PolygonArea(const Polygon2& polygon);

/// Clips a convex polygon against an axis-aligned rectangle
/// (Sutherland-Hodgman).
Polygon2 ClipToAabb(const Polygon2& polygon, const Aabb2& box);

/// Exact intersection area of an oriented rectangle and an axis-aligned box.
double IntersectionArea(const OrientedRect& rect, const Aabb2& box);

/// Convex hull (counter-clockwise, no repeated endpoint).
Polygon2 ConvexHull(std::vector<Eigen::Vector2d> points);

/// Signed distance from `p` to a convex counter-clockwise polygon: negative
/// inside, positive outside.
double SignedDistanceToConvex(const Polygon2& polygon, const Eigen::Vector2d& p);

}  // namespace footfall
