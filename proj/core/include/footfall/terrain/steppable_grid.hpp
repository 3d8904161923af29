#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "footfall/common/geometry.hpp"

namespace footfall::terrain {

struct GridCell {
  bool steppable = false;
  double height = 0.0;
  int plane_id = -1;

  bool operator==(const GridCell&) const = default;
};

struct CellIndex {
  int ix = 0;
  int iy = 0;
};

/// 2.5D terrain grid: cell (ix, iy) covers
/// [origin.x + ix*res, origin.x + (ix+1)*res) x [origin.y + iy*res, ...).
/// Storage is row-major with ix fastest. Immutable once handed to a planner.
class SteppableGrid {
 public:
  SteppableGrid() = default;
  SteppableGrid(double resolution, Eigen::Vector2d origin, int nx, int ny);

  double resolution() const { return resolution_; }
  const Eigen::Vector2d& origin() const { return origin_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  std::size_t cell_count() const { return cells_.size(); }

  const GridCell& at(int ix, int iy) const { return cells_[Linear(ix, iy)]; }
  GridCell& at(int ix, int iy) { return cells_[Linear(ix, iy)]; }
  const std::vector<GridCell>& cells() const { return cells_; }
  std::vector<GridCell>& cells() { return cells_; }

  bool InBounds(int ix, int iy) const {
    return ix >= 0 && iy >= 0 && ix < nx_ && iy < ny_;
  }
  /// Cell containing the point, or nullopt outside the grid.
  std::optional<CellIndex> Locate(const Eigen::Vector2d& p) const;
  Eigen::Vector2d CellCenter(int ix, int iy) const {
    return {origin_.x() + (ix + 0.5) * resolution_,
            origin_.y() + (iy + 0.5) * resolution_};
  }
  Aabb2 Bounds() const {
    return {origin_, origin_ + Eigen::Vector2d(nx_ * resolution_,
                                               ny_ * resolution_)};
  }

  /// False outside the grid.
  bool SteppableAt(const Eigen::Vector2d& p) const;
  std::size_t SteppableCount() const;

  bool operator==(const SteppableGrid&) const = default;

 private:
  std::size_t Linear(int ix, int iy) const {
    return static_cast<std::size_t>(iy) * static_cast<std::size_t>(nx_) +
           static_cast<std::size_t>(ix);
  }

  double resolution_ = 0.01;
  Eigen::Vector2d origin_{0.0, 0.0};
  int nx_ = 0;
  int ny_ = 0;
  std::vector<GridCell> cells_;
};

}  // namespace footfall::terrain
