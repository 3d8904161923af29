#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "footfall/terrain/point_cloud.hpp"
#include "footfall/terrain/steppable_grid.hpp"

namespace footfall::terrain {

/// Horizontal crop box. `origin` is the midpoint of the rear edge: the box
/// spans x in [origin.x, origin.x + length) and y in
/// [origin.y - width/2, origin.y + width/2). The box is axis-aligned in the
/// base frame.
struct RegionOfInterest {
  double width = 1.0;
  double length = 2.0;
  Eigen::Vector2d origin{0.0, 0.0};
  double z_min = -1.0;
  double z_max = 1.0;

  Aabb2 Footprint() const {
    return {{origin.x(), origin.y() - 0.5 * width},
            {origin.x() + length, origin.y() + 0.5 * width}};
  }
};

struct MappingConfig {
  RegionOfInterest roi;
  double voxel_downsample = 0.01;
  double ransac_dist_threshold = 0.01;
  int ransac_max_planes = 8;
  int ransac_min_inliers = 200;
  int ransac_iterations = 300;
  double max_tilt_deg = 15.0;
  double resolution = 0.01;
  int min_points_per_cell = 3;
  std::uint64_t seed = 0;

  /// Throws kInvalidArgument when a threshold is out of range.
  void Validate() const;
};

struct Plane {
  Eigen::Vector3d normal{0.0, 0.0, 1.0};
  double offset = 0.0;  // n . p = offset
  std::vector<int> inliers;
  double mean_height = 0.0;

  double SignedDistance(const Eigen::Vector3d& p) const {
    return normal.dot(p) - offset;
  }
  /// Height of the plane above (x, y); requires a non-vertical normal.
  double HeightAt(double x, double y) const {
    return (offset - normal.x() * x - normal.y() * y) / normal.z();
  }
  double TiltDeg() const;
};

/// Keeps the points inside the ROI box, in input order.
PointCloud Crop(const PointCloud& cloud, const RegionOfInterest& roi);

/// Crops to the ROI box and keeps one centroid per occupied voxel. Voxels are
/// anchored at the ROI's lower corner so they align with grid cells. Output
/// order follows first appearance in the input.
PointCloud CropAndDownsample(const PointCloud& cloud, const MappingConfig& cfg);

/// Iterative RANSAC: fit, least-squares refine, remove inliers, repeat.
/// Planes steeper than cfg.max_tilt_deg are dropped. Result is sorted by
/// decreasing inlier count; inlier indices refer to `cloud`.
std::vector<Plane> SegmentPlanes(const PointCloud& cloud,
                                 const MappingConfig& cfg);

/// Rasterises accepted planes over the ROI. A point of `cloud` votes for the
/// nearest plane within the RANSAC distance threshold; a cell is steppable iff
/// exactly one plane gathers at least cfg.min_points_per_cell votes in it.
SteppableGrid BuildSteppableGrid(const std::vector<Plane>& planes,
                                 const PointCloud& cloud,
                                 const MappingConfig& cfg);

struct MapResult {
  SteppableGrid grid;
  std::vector<Plane> planes;
  std::size_t cropped_points = 0;
  std::size_t downsampled_points = 0;
};

/// Full frame pipeline: base transform, crop, downsample, segment, rasterise.
/// Holds no state between calls.
MapResult MapTerrain(const PointCloud& sensor_cloud,
                     const Eigen::Isometry3d& sensor_pose,
                     const MappingConfig& cfg);

/// Same pipeline for a cloud already in the base frame.
MapResult MapTerrain(const PointCloud& base_cloud, const MappingConfig& cfg);

}  // namespace footfall::terrain
