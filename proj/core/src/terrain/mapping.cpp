#include "footfall/terrain/mapping.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <unordered_map>

#include <Eigen/Eigenvalues>

#include "footfall/common/error.hpp"
#include "footfall/common/geometry.hpp"

namespace footfall::terrain {

void MappingConfig::Validate() const {
  ThrowUnless(roi.width > 0.0 && roi.length > 0.0, ErrorCode::kInvalidArgument,
              "ROI width and length must be positive");
  ThrowUnless(roi.z_max > roi.z_min, ErrorCode::kInvalidArgument,
              "ROI z range is empty");
  ThrowUnless(voxel_downsample > 0.0 && ransac_dist_threshold > 0.0 &&
                  resolution > 0.0,
              ErrorCode::kInvalidArgument, "thresholds must be positive");
  ThrowUnless(ransac_max_planes > 0 && ransac_min_inliers > 0 &&
                  ransac_iterations > 0 && min_points_per_cell > 0,
              ErrorCode::kInvalidArgument, "counts must be positive");
  ThrowUnless(max_tilt_deg > 0.0 && max_tilt_deg < 90.0,
              ErrorCode::kInvalidArgument, "max_tilt_deg must be in (0, 90)");
}

double Plane::TiltDeg() const {
  return RadToDeg(std::acos(std::clamp(std::abs(normal.z()), 0.0, 1.0)));
}

PointCloud Crop(const PointCloud& cloud, const RegionOfInterest& roi) {
  ThrowUnless(cloud.frame == Frame::kBase, ErrorCode::kInvalidFrame,
              "crop requires a base-frame cloud");
  const Aabb2 box = roi.Footprint();
  PointCloud out;
  out.frame = Frame::kBase;
  for (const auto& p : cloud.points) {
    if (p.x() >= box.min.x() && p.x() < box.max.x() && p.y() >= box.min.y() &&
        p.y() < box.max.y() && p.z() >= roi.z_min && p.z() <= roi.z_max) {
      out.points.push_back(p);
    }
  }
  return out;
}

PointCloud CropAndDownsample(const PointCloud& cloud, const MappingConfig& cfg) {
  ThrowUnless(cloud.frame == Frame::kBase, ErrorCode::kInvalidFrame,
              "crop requires a base-frame cloud");
  ThrowUnless(cfg.voxel_downsample > 0.0, ErrorCode::kInvalidArgument,
              "voxel size must be positive");
  const Aabb2 box = cfg.roi.Footprint();
  const double inv = 1.0 / cfg.voxel_downsample;

  struct Accum {
    Eigen::Vector3d sum;
    int count;
  };
  std::unordered_map<std::uint64_t, std::size_t> slot_of;
  std::vector<Accum> voxels;
  slot_of.reserve(cloud.size());
  for (const auto& p : cloud.points) {
    if (!(p.x() >= box.min.x() && p.x() < box.max.x() && p.y() >= box.min.y() &&
          p.y() < box.max.y() && p.z() >= cfg.roi.z_min &&
          p.z() <= cfg.roi.z_max)) {
      continue;
    }
    // 21 bits per axis covers 2M voxels per dimension.
    const auto kx = static_cast<std::uint64_t>((p.x() - box.min.x()) * inv);
    const auto ky = static_cast<std::uint64_t>((p.y() - box.min.y()) * inv);
    const auto kz = static_cast<std::uint64_t>(
        std::floor((p.z() - cfg.roi.z_min) * inv));
    const std::uint64_t key = (kx & 0x1FFFFF) | ((ky & 0x1FFFFF) << 21) |
                              ((kz & 0x1FFFFF) << 42);
    auto [it, inserted] = slot_of.try_emplace(key, voxels.size());
    if (inserted) {
      voxels.push_back({p, 1});
    } else {
      voxels[it->second].sum += p;
      ++voxels[it->second].count;
    }
  }

  PointCloud out;
  out.frame = Frame::kBase;
  out.points.reserve(voxels.size());
  for (const auto& v : voxels) out.points.push_back(v.sum / v.count);
  return out;
}

namespace {

// Least-squares plane through the given points (smallest principal axis).
bool FitPlane(const std::vector<Eigen::Vector3d>& pts,
              const std::vector<int>& idx, Eigen::Vector3d& normal,
              double& offset) {
  if (idx.size() < 3) return false;
  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
  for (int i : idx) centroid += pts[i];
  centroid /= static_cast<double>(idx.size());
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (int i : idx) {
    const Eigen::Vector3d d = pts[i] - centroid;
    cov.noalias() += d * d.transpose();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(cov);
  if (es.info() != Eigen::Success) return false;
  normal = es.eigenvectors().col(0).normalized();
  if (normal.z() < 0.0) normal = -normal;
  offset = normal.dot(centroid);
  return true;
}

std::vector<int> CollectInliers(const std::vector<Eigen::Vector3d>& pts,
                                const std::vector<int>& candidates,
                                const Eigen::Vector3d& normal, double offset,
                                double threshold) {
  std::vector<int> inliers;
  for (int i : candidates) {
    if (std::abs(normal.dot(pts[i]) - offset) <= threshold) inliers.push_back(i);
  }
  return inliers;
}

// Largest 8-connected patch of `idx` on a horizontal lattice of spacing
// `cell`. A tilted consensus plane cutting across several parallel surfaces
// picks up disjoint strips; its largest strip lies on a single surface.
std::vector<int> LargestPatch(const std::vector<Eigen::Vector3d>& pts,
                              const std::vector<int>& idx, double cell) {
  if (idx.empty()) return {};
  auto key = [](std::int64_t ix, std::int64_t iy) {
    return (static_cast<std::uint64_t>(ix) << 32) ^ static_cast<std::uint32_t>(iy);
  };
  std::unordered_map<std::uint64_t, std::vector<int>> cells;
  for (int i : idx) {
    const auto ix = static_cast<std::int64_t>(std::floor(pts[i].x() / cell));
    const auto iy = static_cast<std::int64_t>(std::floor(pts[i].y() / cell));
    cells[key(ix, iy)].push_back(i);
  }
  std::unordered_map<std::uint64_t, int> label;
  std::vector<int> best;
  std::vector<std::pair<std::int64_t, std::int64_t>> stack;
  int next = 0;
  for (int seed : idx) {
    const auto sx = static_cast<std::int64_t>(std::floor(pts[seed].x() / cell));
    const auto sy = static_cast<std::int64_t>(std::floor(pts[seed].y() / cell));
    if (label.count(key(sx, sy)) != 0) continue;
    std::vector<int> members;
    label[key(sx, sy)] = next;
    stack.assign(1, {sx, sy});
    while (!stack.empty()) {
      const auto [cx, cy] = stack.back();
      stack.pop_back();
      const auto& here = cells[key(cx, cy)];
      members.insert(members.end(), here.begin(), here.end());
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        for (std::int64_t dx = -1; dx <= 1; ++dx) {
          const auto k = key(cx + dx, cy + dy);
          if (cells.count(k) == 0 || label.count(k) != 0) continue;
          label[k] = next;
          stack.push_back({cx + dx, cy + dy});
        }
      }
    }
    ++next;
    if (members.size() > best.size()) best = std::move(members);
  }
  return best;
}

}  // namespace

std::vector<Plane> SegmentPlanes(const PointCloud& cloud,
                                 const MappingConfig& cfg) {
  ThrowUnless(!cloud.empty(), ErrorCode::kEmptyCloud, "cannot segment an empty cloud");
  ThrowUnless(cloud.frame == Frame::kBase, ErrorCode::kInvalidFrame,
              "segmentation requires a base-frame cloud");
  cfg.Validate();

  const auto& pts = cloud.points;
  const double thr = cfg.ransac_dist_threshold;
  const double max_tilt = cfg.max_tilt_deg;
  const double patch_cell = 2.0 * std::max(cfg.voxel_downsample, cfg.resolution);
  std::mt19937_64 rng(cfg.seed);

  std::vector<int> remaining(pts.size());
  std::iota(remaining.begin(), remaining.end(), 0);
  // Dense copy of the remaining points keeps the consensus loop cache friendly.
  std::vector<Eigen::Vector3d> work;

  std::vector<Plane> accepted;
  for (int extracted = 0; extracted < cfg.ransac_max_planes; ++extracted) {
    if (static_cast<int>(remaining.size()) < cfg.ransac_min_inliers) break;
    work.clear();
    work.reserve(remaining.size());
    for (int i : remaining) work.push_back(pts[i]);
    const int n = static_cast<int>(work.size());

    std::uniform_int_distribution<int> pick(0, n - 1);
    int best_count = 0;
    Eigen::Vector3d best_normal = Eigen::Vector3d::UnitZ();
    double best_offset = 0.0;
    for (int it = 0; it < cfg.ransac_iterations; ++it) {
      const int a = pick(rng);
      int b = pick(rng);
      int c = pick(rng);
      if (a == b || b == c || a == c) continue;
      Eigen::Vector3d normal = (work[b] - work[a]).cross(work[c] - work[a]);
      const double norm = normal.norm();
      if (norm < 1e-12) continue;
      normal /= norm;
      const double offset = normal.dot(work[a]);
      int count = 0;
      for (const auto& p : work) {
        count += std::abs(normal.dot(p) - offset) <= thr;
      }
      if (count > best_count) {
        best_count = count;
        best_normal = normal;
        best_offset = offset;
      }
    }
    if (best_count < cfg.ransac_min_inliers) break;

    std::vector<int> inliers =
        CollectInliers(pts, remaining, best_normal, best_offset, thr);
    Eigen::Vector3d normal = best_normal;
    double offset = best_offset;
    for (int refine = 0; refine < 3; ++refine) {
      Eigen::Vector3d n2;
      double d2 = 0.0;
      if (!FitPlane(pts, LargestPatch(pts, inliers, patch_cell), n2, d2)) break;
      auto refined = CollectInliers(pts, remaining, n2, d2, thr);
      if (static_cast<int>(refined.size()) < cfg.ransac_min_inliers) break;
      normal = n2;
      offset = d2;
      inliers = std::move(refined);
    }
    if (normal.z() < 0.0) {
      normal = -normal;
      offset = -offset;
    }

    // Remove the consensus set whether or not the plane survives the tilt
    // filter, so walls do not get re-detected.
    std::vector<char> taken(pts.size(), 0);
    for (int i : inliers) taken[i] = 1;
    std::erase_if(remaining, [&](int i) { return taken[i] != 0; });

    Plane plane;
    plane.normal = normal;
    plane.offset = offset;
    plane.inliers = std::move(inliers);
    double zsum = 0.0;
    for (int i : plane.inliers) zsum += pts[i].z();
    plane.mean_height = zsum / static_cast<double>(plane.inliers.size());
    if (plane.TiltDeg() <= max_tilt) accepted.push_back(std::move(plane));
  }

  std::stable_sort(accepted.begin(), accepted.end(),
                   [](const Plane& a, const Plane& b) {
                     return a.inliers.size() > b.inliers.size();
                   });
  return accepted;
}

SteppableGrid BuildSteppableGrid(const std::vector<Plane>& planes,
                                 const PointCloud& cloud,
                                 const MappingConfig& cfg) {
  const Aabb2 box = cfg.roi.Footprint();
  const int nx = std::max(
      1, static_cast<int>(std::lround(cfg.roi.length / cfg.resolution)));
  const int ny = std::max(
      1, static_cast<int>(std::lround(cfg.roi.width / cfg.resolution)));
  SteppableGrid grid(cfg.resolution, box.min, nx, ny);
  if (planes.empty()) return grid;

  const std::size_t np = planes.size();
  std::vector<std::uint16_t> votes(grid.cell_count() * np, 0);
  const double thr = cfg.ransac_dist_threshold;
  for (const auto& p : cloud.points) {
    const auto cell = grid.Locate(p.head<2>());
    if (!cell) continue;
    int best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < np; ++k) {
      const double d = std::abs(planes[k].SignedDistance(p));
      if (d <= thr && d < best_dist) {
        best_dist = d;
        best = static_cast<int>(k);
      }
    }
    if (best < 0) continue;
    auto& v = votes[(static_cast<std::size_t>(cell->iy) * nx + cell->ix) * np +
                    static_cast<std::size_t>(best)];
    if (v < std::numeric_limits<std::uint16_t>::max()) ++v;
  }

  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      const std::size_t base = (static_cast<std::size_t>(iy) * nx + ix) * np;
      int owner = -1;
      int owners = 0;
      for (std::size_t k = 0; k < np; ++k) {
        if (votes[base + k] >= cfg.min_points_per_cell) {
          owner = static_cast<int>(k);
          ++owners;
        }
      }
      if (owners != 1) continue;
      const Eigen::Vector2d c = grid.CellCenter(ix, iy);
      auto& cell = grid.at(ix, iy);
      cell.steppable = true;
      cell.plane_id = owner;
      cell.height = planes[owner].HeightAt(c.x(), c.y());
    }
  }
  return grid;
}

MapResult MapTerrain(const PointCloud& base_cloud, const MappingConfig& cfg) {
  cfg.Validate();
  MapResult result;
  const PointCloud cropped = Crop(base_cloud, cfg.roi);
  const PointCloud sparse = CropAndDownsample(cropped, cfg);
  result.cropped_points = cropped.size();
  result.downsampled_points = sparse.size();
  if (!sparse.empty()) result.planes = SegmentPlanes(sparse, cfg);
  result.grid = BuildSteppableGrid(result.planes, cropped, cfg);
  return result;
}

MapResult MapTerrain(const PointCloud& sensor_cloud,
                     const Eigen::Isometry3d& sensor_pose,
                     const MappingConfig& cfg) {
  return MapTerrain(TransformToBase(sensor_cloud, sensor_pose), cfg);
}

}  // namespace footfall::terrain
