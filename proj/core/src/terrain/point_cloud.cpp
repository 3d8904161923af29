#include "footfall/terrain/point_cloud.hpp"

#include "footfall/common/error.hpp"

namespace footfall::terrain {
namespace {

void CheckRigid(const Eigen::Isometry3d& pose) {
  ThrowUnless(pose.matrix().allFinite(), ErrorCode::kInvalidPose,
              "sensor pose contains non-finite entries");
  const Eigen::Matrix3d r = pose.linear();
  ThrowUnless((r.transpose() * r - Eigen::Matrix3d::Identity()).norm() < 1e-6 &&
                  r.determinant() > 0.0,
              ErrorCode::kInvalidPose, "sensor rotation is not orthonormal");
}

}  // namespace

PointCloud TransformToBase(const PointCloud& cloud,
                           const Eigen::Isometry3d& sensor_pose) {
  ThrowUnless(cloud.frame == Frame::kSensor, ErrorCode::kInvalidFrame,
              "cloud is already in the base frame");
  CheckRigid(sensor_pose);
  PointCloud out;
  out.frame = Frame::kBase;
  out.points.reserve(cloud.size());
  for (const auto& p : cloud.points) out.points.push_back(sensor_pose * p);
  return out;
}

PointCloud TransformToSensor(const PointCloud& cloud,
                             const Eigen::Isometry3d& sensor_pose) {
  ThrowUnless(cloud.frame == Frame::kBase, ErrorCode::kInvalidFrame,
              "cloud is already in the sensor frame");
  CheckRigid(sensor_pose);
  const Eigen::Isometry3d inv = sensor_pose.inverse();
  PointCloud out;
  out.frame = Frame::kSensor;
  out.points.reserve(cloud.size());
  for (const auto& p : cloud.points) out.points.push_back(inv * p);
  return out;
}

}  // namespace footfall::terrain
