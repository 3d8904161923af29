#include "footfall/terrain/synthetic.hpp"

#include <cmath>
#include <algorithm>
#include <random>

#include "footfall/common/error.hpp"

namespace footfall::terrain {
namespace {

// Jittered lattice over a rectangle spanned by `u` and `v` from `corner`.
void SampleFace(const Eigen::Vector3d& corner, const Eigen::Vector3d& u,
                const Eigen::Vector3d& v, double density, double sigma,
                std::mt19937_64& rng, std::vector<Eigen::Vector3d>& out) {
  const double lu = u.norm(), lv = v.norm();
  if (lu <= 0.0 || lv <= 0.0) return;
  const double spacing = 1.0 / std::sqrt(density);
  const int nu = std::max(1, static_cast<int>(std::lround(lu / spacing)));
  const int nv = std::max(1, static_cast<int>(std::lround(lv / spacing)));
  std::uniform_real_distribution<double> jitter(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, sigma > 0.0 ? sigma : 1.0);
  out.reserve(out.size() + static_cast<std::size_t>(nu) * nv);
  for (int j = 0; j < nv; ++j) {
    for (int i = 0; i < nu; ++i) {
      const double a = (i + jitter(rng)) / nu;
      const double b = (j + jitter(rng)) / nv;
      Eigen::Vector3d p = corner + a * u + b * v;
      if (sigma > 0.0) {
        const double nx = noise(rng);
        const double ny = noise(rng);
        const double nz = noise(rng);
        p += Eigen::Vector3d(nx, ny, nz);
      }
      out.push_back(p);
    }
  }
}

}  // namespace

PointCloud GenerateSyntheticCloud(std::span<const TerrainBox> scene,
                                  double noise_sigma, double density,
                                  std::uint64_t seed) {
  ThrowUnless(!scene.empty(), ErrorCode::kEmptyScene, "scene has no boxes");
  ThrowUnless(density > 0.0, ErrorCode::kInvalidArgument,
              "density must be positive");
  ThrowUnless(noise_sigma >= 0.0, ErrorCode::kInvalidArgument,
              "noise sigma must be non-negative");
  std::mt19937_64 rng(seed);
  PointCloud cloud;
  cloud.frame = Frame::kBase;
  for (const auto& box : scene) {
    const Eigen::Vector3d h = 0.5 * box.size;
    const Eigen::Vector3d lo = box.center - h;
    const Eigen::Vector3d ex(box.size.x(), 0, 0), ey(0, box.size.y(), 0),
        ez(0, 0, box.size.z());
    SampleFace({lo.x(), lo.y(), box.TopZ()}, ex, ey, density, noise_sigma, rng,
               cloud.points);
    if (box.sample_sides) {
      SampleFace(lo, ex, ez, density, noise_sigma, rng, cloud.points);
      SampleFace({lo.x(), lo.y() + box.size.y(), lo.z()}, ex, ez, density,
                 noise_sigma, rng, cloud.points);
      SampleFace(lo, ey, ez, density, noise_sigma, rng, cloud.points);
      SampleFace({lo.x() + box.size.x(), lo.y(), lo.z()}, ey, ez, density,
                 noise_sigma, rng, cloud.points);
    }
  }
  return cloud;
}

SteppableGrid RasterizeTopFaces(std::span<const TerrainBox> scene, double resolution,
                                const Eigen::Vector2d& origin, int nx, int ny) {
  SteppableGrid grid(resolution, origin, nx, ny);
  std::vector<double> heights;
  for (const auto& b : scene) heights.push_back(b.TopZ());
  std::sort(heights.begin(), heights.end());
  heights.erase(std::unique(heights.begin(), heights.end()), heights.end());
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      const Eigen::Vector2d c = grid.CellCenter(ix, iy);
      const TerrainBox* top = nullptr;
      bool mixed = false;
      for (const auto& b : scene) {
        if (!b.TopFace().Contains(c)) continue;
        if (top != nullptr && b.TopZ() != top->TopZ()) mixed = true;
        top = &b;
      }
      if (top == nullptr || mixed) continue;
      auto& cell = grid.at(ix, iy);
      cell.steppable = true;
      cell.height = top->TopZ();
      cell.plane_id = static_cast<int>(
          std::lower_bound(heights.begin(), heights.end(), top->TopZ()) - heights.begin());
    }
  }
  return grid;
}

}  // namespace footfall::terrain
