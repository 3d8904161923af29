#include "footfall/common/geometry.hpp"

#include <algorithm>
#include <limits>

namespace footfall {

Aabb2 OrientedRect::Bounds() const {
  Aabb2 box{{std::numeric_limits<double>::infinity(),
             std::numeric_limits<double>::infinity()},
            {-std::numeric_limits<double>::infinity(),
             -std::numeric_limits<double>::infinity()}};
  for (const auto& c : Corners()) {
    box.min = box.min.cwiseMin(c);
    box.max = box.max.cwiseMax(c);
  }
  return box;
}

double PolygonArea(const Polygon2& polygon) {
  if (polygon.size() < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const auto& a = polygon[i];
    const auto& b = polygon[(i + 1) % polygon.size()];
    twice += a.x() * b.y() - b.x() * a.y();
  }
  return 0.5 * std::abs(twice);
}

namespace {

// Keeps the half-plane where `inside(p)` holds; `cross(a, b)` returns the
// boundary crossing of segment ab.
template <typename Inside, typename Cross>
Polygon2 ClipHalfPlane(const Polygon2& in, Inside inside, Cross cross) {
  Polygon2 out;
  if (in.empty()) return out;
  out.reserve(in.size() + 2);
  for (std::size_t i = 0; i < in.size(); ++i) {
    const auto& cur = in[i];
    const auto& prev = in[(i + in.size() - 1) % in.size()];
    const bool cur_in = inside(cur), prev_in = inside(prev);
    if (cur_in) {
      if (!prev_in) out.push_back(cross(prev, cur));
      out.push_back(cur);
    } else if (prev_in) {
      out.push_back(cross(prev, cur));
    }
  }
  return out;
}

Eigen::Vector2d CrossX(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                       double x) {
  const double t = (x - a.x()) / (b.x() - a.x());
  return {x, a.y() + t * (b.y() - a.y())};
}

Eigen::Vector2d CrossY(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                       double y) {
  const double t = (y - a.y()) / (b.y() - a.y());
  return {a.x() + t * (b.x() - a.x()), y};
}

}  // namespace

Polygon2 ClipToAabb(const Polygon2& polygon, const Aabb2& box) {
  Polygon2 p = polygon;
  p = ClipHalfPlane(
      p, [&](const auto& v) { return v.x() >= box.min.x(); },
      [&](const auto& a, const auto& b) { return CrossX(a, b, box.min.x()); });
  p = ClipHalfPlane(
      p, [&](const auto& v) { return v.x() <= box.max.x(); },
      [&](const auto& a, const auto& b) { return CrossX(a, b, box.max.x()); });
  p = ClipHalfPlane(
      p, [&](const auto& v) { return v.y() >= box.min.y(); },
      [&](const auto& a, const auto& b) { return CrossY(a, b, box.min.y()); });
  p = ClipHalfPlane(
      p, [&](const auto& v) { return v.y() <= box.max.y(); },
      [&](const auto& a, const auto& b) { return CrossY(a, b, box.max.y()); });
  return p;
}

double IntersectionArea(const OrientedRect& rect, const Aabb2& box) {
  const auto corners = rect.Corners();
  return PolygonArea(ClipToAabb(Polygon2(corners.begin(), corners.end()), box));
}

Polygon2 ConvexHull(std::vector<Eigen::Vector2d> points) {
  std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.size() < 3) return points;
  auto cross = [](const Eigen::Vector2d& o, const Eigen::Vector2d& a,
                  const Eigen::Vector2d& b) {
    return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
  };
  Polygon2 hull(2 * points.size());
  std::size_t k = 0;
  for (const auto& p : points) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = points.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], points[i]) <= 0) --k;
    hull[k++] = points[i];
  }
  hull.resize(k - 1);
  return hull;
}

double SignedDistanceToConvex(const Polygon2& polygon,
                              const Eigen::Vector2d& p) {
  // Outside distance is the distance to the nearest edge; inside distance is
  // minus the distance to the nearest supporting line.
  bool inside = true;
  double min_edge_dist = std::numeric_limits<double>::infinity();
  double max_line_dist = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const auto& a = polygon[i];
    const auto& b = polygon[(i + 1) % polygon.size()];
    const Eigen::Vector2d e = b - a;
    const double len = e.norm();
    if (len == 0.0) continue;
    const Eigen::Vector2d outward(e.y() / len, -e.x() / len);
    const double line_dist = outward.dot(p - a);
    max_line_dist = std::max(max_line_dist, line_dist);
    if (line_dist > 0) inside = false;
    const double t = std::clamp((p - a).dot(e) / (len * len), 0.0, 1.0);
    min_edge_dist = std::min(min_edge_dist, (p - (a + t * e)).norm());
  }
  return inside ? max_line_dist : min_edge_dist;
}

}  // namespace footfall
