#include "footfall/terrain/steppable_grid.hpp"

#include <algorithm>
#include <cmath>

#include "footfall/common/error.hpp"

namespace footfall::terrain {

SteppableGrid::SteppableGrid(double resolution, Eigen::Vector2d origin, int nx,
                             int ny)
    : resolution_(resolution), origin_(std::move(origin)), nx_(nx), ny_(ny) {
  ThrowUnless(resolution > 0.0 && nx >= 0 && ny >= 0,
              ErrorCode::kInvalidArgument, "grid dimensions must be positive");
  cells_.resize(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
}

std::optional<CellIndex> SteppableGrid::Locate(const Eigen::Vector2d& p) const {
  const double fx = (p.x() - origin_.x()) / resolution_;
  const double fy = (p.y() - origin_.y()) / resolution_;
  if (!(fx >= 0.0 && fy >= 0.0 && fx < nx_ && fy < ny_)) return std::nullopt;
  return CellIndex{static_cast<int>(fx), static_cast<int>(fy)};
}

bool SteppableGrid::SteppableAt(const Eigen::Vector2d& p) const {
  const auto idx = Locate(p);
  return idx && at(idx->ix, idx->iy).steppable;
}

std::size_t SteppableGrid::SteppableCount() const {
  return static_cast<std::size_t>(std::count_if(
      cells_.begin(), cells_.end(), [](const GridCell& c) { return c.steppable; }));
}

}  // namespace footfall::terrain
