#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "footfall/planner/footstep.hpp"
#include "footfall/terrain/steppable_grid.hpp"
#include "footfall/terrain/synthetic.hpp"

namespace footfall::sim {

/// Ground-truth terrain.
struct World {
  std::vector<terrain::TerrainBox> boxes;

  const terrain::TerrainBox* Find(int id) const;
};

/// Translates stone `stone_id` horizontally. Throws kInvalidEvent for an
/// unknown id.
World ApplyDisturbance(const World& world, int stone_id,
                       const Eigen::Vector2d& displacement);

/// Fraction of the footprint area resting on box tops whose height is within
/// `height_tol` of the landing height.
double CheckTouchdown(const planner::Footstep& step,
                      std::span<const terrain::TerrainBox> truth,
                      double height_tol = 0.02);

/// Boxes cut to a horizontal window (top faces only), for rendering clouds of
/// just the visible area.
std::vector<terrain::TerrainBox> ClipToWindow(std::span<const terrain::TerrainBox> boxes,
                                              const Aabb2& window);

/// Displacement of the steppable patch under `p` between two grids, found by
/// matching connected components (same plane, 4-connected). A patch that
/// still overlaps its old cells is matched by overlap; otherwise the nearest
/// newly appeared patch of similar area is used.
std::optional<Eigen::Vector2d> TrackPatchDisplacement(
    const terrain::SteppableGrid& before, const terrain::SteppableGrid& after,
    const Eigen::Vector2d& p);

}  // namespace footfall::sim
