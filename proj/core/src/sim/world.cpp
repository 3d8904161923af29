#include "footfall/sim/world.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "footfall/common/error.hpp"
#include "footfall/common/geometry.hpp"

namespace footfall::sim {

const terrain::TerrainBox* World::Find(int id) const {
  for (const auto& b : boxes) {
    if (b.id == id) return &b;
  }
  return nullptr;
}

World ApplyDisturbance(const World& world, int stone_id,
                       const Eigen::Vector2d& displacement) {
  ThrowUnless(world.Find(stone_id) != nullptr, ErrorCode::kInvalidEvent,
              "no stone with id " + std::to_string(stone_id));
  World out = world;
  for (auto& b : out.boxes) {
    if (b.id == stone_id) b.center.head<2>() += displacement;
  }
  return out;
}

double CheckTouchdown(const planner::Footstep& step,
                      std::span<const terrain::TerrainBox> truth, double height_tol) {
  const OrientedRect rect = step.rect();
  double covered = 0.0;
  for (const auto& b : truth) {
    if (std::abs(b.TopZ() - step.z) > height_tol) continue;
    covered += IntersectionArea(rect, b.TopFace());
  }
  return std::clamp(covered / rect.Area(), 0.0, 1.0);
}

std::vector<terrain::TerrainBox> ClipToWindow(std::span<const terrain::TerrainBox> boxes,
                                              const Aabb2& window) {
  std::vector<terrain::TerrainBox> out;
  for (const auto& b : boxes) {
    const Aabb2 top = b.TopFace();
    const Aabb2 cut{top.min.cwiseMax(window.min), top.max.cwiseMin(window.max)};
    if (!(cut.max.x() > cut.min.x() && cut.max.y() > cut.min.y())) continue;
    terrain::TerrainBox c;
    c.id = b.id;
    const Eigen::Vector2d mid = cut.Center();
    c.size = {cut.max.x() - cut.min.x(), cut.max.y() - cut.min.y(), 0.0};
    c.center = {mid.x(), mid.y(), b.TopZ()};
    out.push_back(c);
  }
  return out;
}

namespace {

struct Components {
  std::vector<int> label;  // -1 for non-steppable cells
  std::vector<int> size;
  std::vector<Eigen::Vector2d> centroid;
};

Components Label(const terrain::SteppableGrid& g) {
  Components c;
  c.label.assign(g.cell_count(), -1);
  std::queue<std::pair<int, int>> q;
  for (int iy = 0; iy < g.ny(); ++iy) {
    for (int ix = 0; ix < g.nx(); ++ix) {
      const std::size_t lin = static_cast<std::size_t>(iy) * g.nx() + ix;
      if (!g.at(ix, iy).steppable || c.label[lin] >= 0) continue;
      const int id = static_cast<int>(c.size.size());
      const int plane = g.at(ix, iy).plane_id;
      c.size.push_back(0);
      c.centroid.push_back(Eigen::Vector2d::Zero());
      c.label[lin] = id;
      q.push({ix, iy});
      while (!q.empty()) {
        const auto [x, y] = q.front();
        q.pop();
        ++c.size[id];
        c.centroid[id] += g.CellCenter(x, y);
        constexpr int kDx[] = {1, -1, 0, 0};
        constexpr int kDy[] = {0, 0, 1, -1};
        for (int k = 0; k < 4; ++k) {
          const int nx = x + kDx[k], ny = y + kDy[k];
          if (!g.InBounds(nx, ny)) continue;
          const std::size_t nl = static_cast<std::size_t>(ny) * g.nx() + nx;
          if (c.label[nl] >= 0 || !g.at(nx, ny).steppable ||
              g.at(nx, ny).plane_id != plane) {
            continue;
          }
          c.label[nl] = id;
          q.push({nx, ny});
        }
      }
      c.centroid[id] /= static_cast<double>(c.size[id]);
    }
  }
  return c;
}

}  // namespace

std::optional<Eigen::Vector2d> TrackPatchDisplacement(
    const terrain::SteppableGrid& before, const terrain::SteppableGrid& after,
    const Eigen::Vector2d& p) {
  const auto at = before.Locate(p);
  if (!at || !before.at(at->ix, at->iy).steppable) return std::nullopt;
  const Components cb = Label(before);
  const Components ca = Label(after);
  const int src = cb.label[static_cast<std::size_t>(at->iy) * before.nx() + at->ix];
  const double area_ratio = after.resolution() * after.resolution() /
                            (before.resolution() * before.resolution());

  // Overlap of every new patch with the source patch and with any old patch.
  std::vector<int> with_src(ca.size.size(), 0), with_any(ca.size.size(), 0);
  for (int iy = 0; iy < after.ny(); ++iy) {
    for (int ix = 0; ix < after.nx(); ++ix) {
      const int la = ca.label[static_cast<std::size_t>(iy) * after.nx() + ix];
      if (la < 0) continue;
      const auto b = before.Locate(after.CellCenter(ix, iy));
      if (!b) continue;
      const int lb = cb.label[static_cast<std::size_t>(b->iy) * before.nx() + b->ix];
      if (lb < 0) continue;
      ++with_any[la];
      if (lb == src) ++with_src[la];
    }
  }

  const double src_size = cb.size[src];
  int best = -1;
  int best_overlap = 0;
  for (std::size_t k = 0; k < ca.size.size(); ++k) {
    const double ratio = ca.size[k] * area_ratio / src_size;
    if (ratio < 0.5 || ratio > 2.0) continue;
    if (with_src[k] > best_overlap) {
      best_overlap = with_src[k];
      best = static_cast<int>(k);
    }
  }
  if (best >= 0 && best_overlap >= 0.2 * ca.size[best]) {
    return ca.centroid[best] - cb.centroid[src];
  }

  // The patch left its old footprint entirely: look for one that appeared.
  best = -1;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < ca.size.size(); ++k) {
    const double ratio = ca.size[k] * area_ratio / src_size;
    if (ratio < 0.7 || ratio > 1.4) continue;
    if (with_any[k] > 0.1 * ca.size[k]) continue;
    const double d = (ca.centroid[k] - cb.centroid[src]).norm();
    if (d < best_dist) {
      best_dist = d;
      best = static_cast<int>(k);
    }
  }
  if (best < 0) return std::nullopt;
  return ca.centroid[best] - cb.centroid[src];
}

}  // namespace footfall::sim
