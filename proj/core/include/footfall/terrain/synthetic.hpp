#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "footfall/common/geometry.hpp"
#include "footfall/terrain/point_cloud.hpp"
#include "footfall/terrain/steppable_grid.hpp"

namespace footfall::terrain {

/// Axis-aligned box of terrain. Only the top face is sampled unless
/// `sample_sides` is set (used to model walls).
struct TerrainBox {
  int id = 0;
  Eigen::Vector3d center{0.0, 0.0, 0.0};
  Eigen::Vector3d size{0.0, 0.0, 0.0};
  bool sample_sides = false;

  double TopZ() const { return center.z() + 0.5 * size.z(); }
  Aabb2 TopFace() const {
    return {{center.x() - 0.5 * size.x(), center.y() - 0.5 * size.y()},
            {center.x() + 0.5 * size.x(), center.y() + 0.5 * size.y()}};
  }
};

/// Samples box faces on a jittered lattice of spacing 1/sqrt(density) and
/// adds isotropic Gaussian noise. Deterministic for a fixed seed. Throws
/// kEmptyScene for an empty scene and kInvalidArgument for density <= 0.
PointCloud GenerateSyntheticCloud(std::span<const TerrainBox> scene,
                                  double noise_sigma, double density,
                                  std::uint64_t seed);

/// Ground-truth grid: a cell is steppable when every top face covering its
/// centre has the same height. Plane ids index the distinct top heights in
/// ascending order.
SteppableGrid RasterizeTopFaces(std::span<const TerrainBox> scene, double resolution,
                                const Eigen::Vector2d& origin, int nx, int ny);

}  // namespace footfall::terrain
