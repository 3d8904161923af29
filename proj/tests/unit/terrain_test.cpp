#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <tuple>

#include <Eigen/Geometry>
#include <gtest/gtest.h>

#include "footfall/common/error.hpp"
#include "footfall/terrain/mapping.hpp"
#include "footfall/terrain/point_cloud.hpp"
#include "footfall/terrain/synthetic.hpp"

using namespace footfall;
using namespace footfall::terrain;

namespace {

PointCloud SensorCloud(std::vector<Eigen::Vector3d> pts) {
  PointCloud c;
  c.frame = Frame::kSensor;
  c.points = std::move(pts);
  return c;
}

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no footfall::Error thrown";
  return ErrorCode::kNumericalFailure;
}

MappingConfig RoiAt(double x0, double y0, double length, double width) {
  MappingConfig cfg;
  cfg.roi.origin = {x0, y0};
  cfg.roi.length = length;
  cfg.roi.width = width;
  return cfg;
}

}  // namespace

TEST(TransformToBase, IdentityKeepsPoints) {
  const auto cloud = SensorCloud({{1, 2, 3}, {-0.5, 0.25, 0.0}});
  const auto out = TransformToBase(cloud, Eigen::Isometry3d::Identity());
  EXPECT_EQ(out.frame, Frame::kBase);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out.points[0], cloud.points[0]);
  EXPECT_EQ(out.points[1], cloud.points[1]);
}

TEST(TransformToBase, PureTranslation) {
  Eigen::Isometry3d pose = Eigen::Isometry3d::Identity();
  pose.translation() = Eigen::Vector3d(0, 0, 0.5);
  const auto out = TransformToBase(SensorCloud({{1, 0, 0}}), pose);
  EXPECT_TRUE(out.points[0].isApprox(Eigen::Vector3d(1, 0, 0.5)));
}

TEST(TransformToBase, QuarterTurnYaw) {
  Eigen::Isometry3d pose(Eigen::AngleAxisd(M_PI / 2, Eigen::Vector3d::UnitZ()));
  const auto out = TransformToBase(SensorCloud({{1, 0, 0}}), pose);
  EXPECT_NEAR(out.points[0].x(), 0.0, 1e-12);
  EXPECT_NEAR(out.points[0].y(), 1.0, 1e-12);
  EXPECT_NEAR(out.points[0].z(), 0.0, 1e-12);
}

TEST(TransformToBase, RejectsNonFinitePose) {
  Eigen::Isometry3d pose = Eigen::Isometry3d::Identity();
  pose.translation().x() = std::numeric_limits<double>::quiet_NaN();
  EXPECT_EQ(CodeOf([&] { TransformToBase(SensorCloud({{1, 0, 0}}), pose); }),
            ErrorCode::kInvalidPose);
}

TEST(TransformToBase, RejectsBaseFrameInput) {
  PointCloud c;
  c.points = {{0, 0, 0}};
  EXPECT_EQ(CodeOf([&] { TransformToBase(c, Eigen::Isometry3d::Identity()); }),
            ErrorCode::kInvalidFrame);
}

TEST(TransformToBase, RoundTripsThroughSensorFrame) {
  Eigen::Isometry3d pose(Eigen::AngleAxisd(0.4, Eigen::Vector3d(1, 2, 3).normalized()));
  pose.translation() = Eigen::Vector3d(0.3, -0.2, 1.1);
  PointCloud base;
  base.points = {{0.5, 0.1, 0.0}, {1.5, -0.3, 0.2}};
  const auto back = TransformToBase(TransformToSensor(base, pose), pose);
  for (std::size_t i = 0; i < base.size(); ++i) {
    EXPECT_LT((back.points[i] - base.points[i]).norm(), 1e-12);
  }
}

TEST(CropAndDownsample, AllOutsideGivesEmpty) {
  PointCloud c;
  c.points = {{-1, 0, 0}, {5, 0, 0}, {1, 3, 0}};
  EXPECT_TRUE(CropAndDownsample(c, MappingConfig{}).empty());
}

TEST(CropAndDownsample, CoincidentPointsCollapse) {
  PointCloud c;
  c.points.assign(1000, Eigen::Vector3d(0.5, 0.1, 0.02));
  const auto out = CropAndDownsample(c, MappingConfig{});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_TRUE(out.points[0].isApprox(Eigen::Vector3d(0.5, 0.1, 0.02)));
}

TEST(CropAndDownsample, MatchesBruteForceVoxelCount) {
  MappingConfig cfg;
  PointCloud c;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> jitter(-0.001, 0.001);
  for (double x = 0.0025; x < 2.0; x += 0.005) {
    for (double y = -0.4975; y < 0.5; y += 0.005) {
      c.points.emplace_back(x + jitter(rng), y + jitter(rng), 0.003 * std::sin(7 * x));
    }
  }
  const Aabb2 box = cfg.roi.Footprint();
  std::set<std::tuple<long, long, long>> voxels;
  for (const auto& p : c.points) {
    if (p.x() < box.min.x() || p.x() >= box.max.x() || p.y() < box.min.y() ||
        p.y() >= box.max.y()) {
      continue;
    }
    voxels.insert({static_cast<long>(std::floor((p.x() - box.min.x()) / 0.01)),
                   static_cast<long>(std::floor((p.y() - box.min.y()) / 0.01)),
                   static_cast<long>(std::floor((p.z() - cfg.roi.z_min) / 0.01))});
  }
  EXPECT_EQ(CropAndDownsample(c, cfg).size(), voxels.size());
}

TEST(CropAndDownsample, OutputInsideRoi) {
  PointCloud c;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 20000; ++i) c.points.emplace_back(u(rng), u(rng), 0.3 * u(rng));
  const auto cfg = RoiAt(-0.5, 0.2, 1.5, 0.8);
  const Aabb2 box = cfg.roi.Footprint();
  for (const auto& p : CropAndDownsample(c, cfg).points) {
    EXPECT_TRUE(box.Contains(p.head<2>()));
    EXPECT_GE(p.z(), cfg.roi.z_min);
    EXPECT_LE(p.z(), cfg.roi.z_max);
  }
}

TEST(SyntheticCloud, NoiselessBoxTop) {
  const std::vector<TerrainBox> scene{{0, {0.5, 0.5, -0.05}, {1.0, 1.0, 0.1}}};
  const auto c = GenerateSyntheticCloud(scene, 0.0, 1e4, 1);
  EXPECT_EQ(c.size(), 10000u);
  for (const auto& p : c.points) EXPECT_EQ(p.z(), 0.0);
}

TEST(SyntheticCloud, SameSeedIsBitIdentical) {
  const std::vector<TerrainBox> scene{{0, {0.5, 0.0, 0.0}, {1.0, 0.6, 0.1}}};
  const auto a = GenerateSyntheticCloud(scene, 0.002, 2e4, 42);
  const auto b = GenerateSyntheticCloud(scene, 0.002, 2e4, 42);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a.points[i], b.points[i]);
}

TEST(SyntheticCloud, NoiseStandardDeviation) {
  const std::vector<TerrainBox> scene{{0, {0.5, 0.5, -0.05}, {1.0, 1.0, 0.1}}};
  const auto c = GenerateSyntheticCloud(scene, 0.002, 1e4, 9);
  double mean = 0.0;
  for (const auto& p : c.points) mean += p.z();
  mean /= static_cast<double>(c.size());
  double var = 0.0;
  for (const auto& p : c.points) var += (p.z() - mean) * (p.z() - mean);
  const double sd = std::sqrt(var / static_cast<double>(c.size() - 1));
  EXPECT_GE(sd, 0.0018);
  EXPECT_LE(sd, 0.0022);
}

TEST(SyntheticCloud, Errors) {
  EXPECT_EQ(CodeOf([] { GenerateSyntheticCloud({}, 0.0, 1e4, 0); }), ErrorCode::kEmptyScene);
  const std::vector<TerrainBox> scene{{0, {0, 0, 0}, {1, 1, 0.1}}};
  EXPECT_EQ(CodeOf([&] { GenerateSyntheticCloud(scene, 0.0, 0.0, 0); }),
            ErrorCode::kInvalidArgument);
}

TEST(SegmentPlanes, NoiselessHorizontalPlane) {
  PointCloud c;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ux(0.0, 2.0), uy(-0.5, 0.5);
  for (int i = 0; i < 5000; ++i) c.points.emplace_back(ux(rng), uy(rng), 0.07);
  const auto planes = SegmentPlanes(c, MappingConfig{});
  ASSERT_EQ(planes.size(), 1u);
  EXPECT_LT((planes[0].normal - Eigen::Vector3d::UnitZ()).norm(), 1e-6);
  EXPECT_NEAR(planes[0].mean_height, 0.07, 1e-12);
  EXPECT_EQ(planes[0].inliers.size(), 5000u);
}

TEST(SegmentPlanes, ThreeNoisyPlanes) {
  PointCloud c;
  std::mt19937_64 rng(21);
  std::normal_distribution<double> noise(0.0, 0.002);
  std::uniform_real_distribution<double> uy(-0.5, 0.5), u01(0.0, 1.0);
  const double heights[] = {0.0, 0.05, 0.10};
  for (int k = 0; k < 3; ++k) {
    for (int i = 0; i < 2500; ++i) {
      const double x = 0.6 * k + 0.55 * u01(rng);
      c.points.emplace_back(x, uy(rng), heights[k] + noise(rng));
    }
  }
  const auto planes = SegmentPlanes(c, MappingConfig{});
  ASSERT_EQ(planes.size(), 3u);
  std::vector<double> found;
  for (const auto& p : planes) found.push_back(p.mean_height);
  std::sort(found.begin(), found.end());
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(found[k], heights[k], 0.005);
}

TEST(SegmentPlanes, WallIsExcluded) {
  PointCloud c;
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 4000; ++i) c.points.emplace_back(1.5 * u(rng), u(rng) - 0.5, 0.0);
  for (int i = 0; i < 4000; ++i) c.points.emplace_back(1.6, u(rng) - 0.5, 0.8 * u(rng));
  MappingConfig cfg;
  cfg.max_tilt_deg = 15.0;
  const auto planes = SegmentPlanes(c, cfg);
  ASSERT_EQ(planes.size(), 1u);
  EXPECT_LT(planes[0].TiltDeg(), 1.0);
}

TEST(SegmentPlanes, Errors) {
  EXPECT_EQ(CodeOf([] { SegmentPlanes(PointCloud{}, MappingConfig{}); }),
            ErrorCode::kEmptyCloud);
  EXPECT_EQ(CodeOf([] { SegmentPlanes(SensorCloud({{0, 0, 0}}), MappingConfig{}); }),
            ErrorCode::kInvalidFrame);
}

TEST(SegmentPlanes, PlaneInvariantsOnRandomScenes) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 8; ++trial) {
    std::uniform_real_distribution<double> h(-0.1, 0.2), tilt(-0.3, 0.3);
    std::vector<TerrainBox> scene;
    for (int k = 0; k < 3; ++k) {
      scene.push_back({k, {0.3 + 0.6 * k, 0.0, h(rng)}, {0.5, 0.8, 0.1}});
    }
    scene.push_back({9, {1.9, 0.0, 0.2}, {0.05, 0.8, 0.6}, true});
    MappingConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(trial);
    const auto cloud = CropAndDownsample(
        GenerateSyntheticCloud(scene, 0.002, 2e4, static_cast<std::uint64_t>(trial)), cfg);
    const auto planes = SegmentPlanes(cloud, cfg);
    std::size_t last = std::numeric_limits<std::size_t>::max();
    for (const auto& p : planes) {
      EXPECT_NEAR(p.normal.norm(), 1.0, 1e-9);
      EXPECT_LE(p.TiltDeg(), cfg.max_tilt_deg);
      EXPECT_GE(static_cast<int>(p.inliers.size()), cfg.ransac_min_inliers);
      EXPECT_LE(p.inliers.size(), last);
      last = p.inliers.size();
      for (int i : p.inliers) {
        EXPECT_LE(std::abs(p.SignedDistance(cloud.points[i])), cfg.ransac_dist_threshold);
      }
    }
  }
}

TEST(BuildSteppableGrid, NoPlanesNoSteppableCells) {
  PointCloud c;
  c.points = {{0.5, 0.0, 0.0}};
  EXPECT_EQ(BuildSteppableGrid({}, c, MappingConfig{}).SteppableCount(), 0u);
}

TEST(BuildSteppableGrid, FullRoiPlane) {
  const std::vector<TerrainBox> scene{{0, {1.0, 0.0, 0.05}, {2.4, 1.4, 0.1}}};
  MappingConfig cfg;
  const auto result = MapTerrain(GenerateSyntheticCloud(scene, 0.002, 1.5e5, 4), cfg);
  const auto& g = result.grid;
  ASSERT_EQ(g.nx(), 200);
  ASSERT_EQ(g.ny(), 100);
  for (int iy = 1; iy < g.ny() - 1; ++iy) {
    for (int ix = 1; ix < g.nx() - 1; ++ix) {
      const auto& cell = g.at(ix, iy);
      ASSERT_TRUE(cell.steppable) << ix << "," << iy;
      EXPECT_NEAR(cell.height, 0.1, cfg.ransac_dist_threshold);
    }
  }
}

TEST(BuildSteppableGrid, NarrowPathBandWidth) {
  // Noise-free so the band edge is pure geometry.
  const std::vector<TerrainBox> scene{{0, {1.5, 0.0, -0.05}, {3.0, 0.3, 0.1}}};
  MappingConfig cfg = RoiAt(0.5, 0.0, 1.2, 0.6);
  cfg.resolution = 0.005;
  cfg.voxel_downsample = 0.005;
  const auto g = MapTerrain(GenerateSyntheticCloud(scene, 0.0, 6e5, 2), cfg).grid;
  for (int ix = 0; ix < g.nx(); ix += 7) {
    int band = 0;
    for (int iy = 0; iy < g.ny(); ++iy) band += g.at(ix, iy).steppable;
    EXPECT_GE(band, 59) << "column " << ix;
    EXPECT_LE(band, 61) << "column " << ix;
  }
}

TEST(BuildSteppableGrid, CellsAgreeWithTheirPlane) {
  const std::vector<TerrainBox> scene{{0, {0.4, 0.0, -0.05}, {0.8, 1.0, 0.1}},
                                      {1, {1.4, 0.2, 0.0}, {0.6, 0.4, 0.1}}};
  MappingConfig cfg;
  const auto r = MapTerrain(GenerateSyntheticCloud(scene, 0.002, 1.5e5, 6), cfg);
  ASSERT_EQ(r.planes.size(), 2u);
  for (int iy = 0; iy < r.grid.ny(); ++iy) {
    for (int ix = 0; ix < r.grid.nx(); ++ix) {
      const auto& cell = r.grid.at(ix, iy);
      if (!cell.steppable) continue;
      ASSERT_GE(cell.plane_id, 0);
      ASSERT_LT(cell.plane_id, static_cast<int>(r.planes.size()));
      EXPECT_TRUE(std::isfinite(cell.height));
      EXPECT_LE(std::abs(cell.height - r.planes[cell.plane_id].mean_height),
                cfg.ransac_dist_threshold);
    }
  }
}

TEST(MapTerrain, IsIdempotentAndStateless) {
  const std::vector<TerrainBox> a{{0, {1.0, 0.0, -0.05}, {2.0, 1.0, 0.1}}};
  const std::vector<TerrainBox> b{{0, {0.5, 0.2, 0.1}, {0.6, 0.3, 0.1}}};
  const auto ca = GenerateSyntheticCloud(a, 0.002, 1e5, 1);
  const auto cb = GenerateSyntheticCloud(b, 0.002, 1e5, 2);
  const MappingConfig cfg;
  const auto first = MapTerrain(ca, cfg).grid;
  MapTerrain(cb, cfg);
  EXPECT_EQ(MapTerrain(ca, cfg).grid, first);
}

TEST(MapTerrain, ShrinkingRoiNeverAddsSteppableCells) {
  const std::vector<TerrainBox> scene{{0, {0.3, 0.0, -0.05}, {0.7, 1.0, 0.1}},
                                      {1, {1.0, -0.2, -0.05}, {0.4, 0.3, 0.1}},
                                      {2, {1.6, 0.2, 0.05}, {0.5, 0.4, 0.1}}};
  const auto cloud = GenerateSyntheticCloud(scene, 0.002, 1.5e5, 3);
  const auto big = MapTerrain(cloud, MappingConfig{}).grid;
  const auto small = MapTerrain(cloud, RoiAt(0.5, 0.0, 1.0, 0.6)).grid;
  EXPECT_LE(small.SteppableCount(), big.SteppableCount());
  for (int iy = 0; iy < small.ny(); ++iy) {
    for (int ix = 0; ix < small.nx(); ++ix) {
      if (!small.at(ix, iy).steppable) continue;
      EXPECT_TRUE(big.SteppableAt(small.CellCenter(ix, iy)));
    }
  }
}

TEST(MappingConfig, RejectsBadThresholds) {
  MappingConfig cfg;
  cfg.max_tilt_deg = 90.0;
  EXPECT_EQ(CodeOf([&] { cfg.Validate(); }), ErrorCode::kInvalidArgument);
  cfg = MappingConfig{};
  cfg.roi.width = 0.0;
  EXPECT_EQ(CodeOf([&] { cfg.Validate(); }), ErrorCode::kInvalidArgument);
  cfg = MappingConfig{};
  cfg.ransac_dist_threshold = 0.0;
  EXPECT_EQ(CodeOf([&] { cfg.Validate(); }), ErrorCode::kInvalidArgument);
}

TEST(RasterizeTopFaces, MarksBoxTops) {
  const std::vector<TerrainBox> scene{{0, {0.05, 0.05, -0.05}, {0.1, 0.1, 0.1}},
                                      {1, {0.25, 0.05, 0.0}, {0.1, 0.1, 0.1}}};
  const auto g = RasterizeTopFaces(scene, 0.01, {0.0, 0.0}, 40, 10);
  EXPECT_EQ(g.SteppableCount(), 200u);
  EXPECT_EQ(g.at(5, 5).plane_id, 0);
  EXPECT_EQ(g.at(25, 5).plane_id, 1);
  EXPECT_DOUBLE_EQ(g.at(25, 5).height, 0.05);
  EXPECT_FALSE(g.at(15, 5).steppable);
}
