#pragma once

#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace footfall::terrain {

enum class Frame { kSensor, kBase };

struct PointCloud {
  std::vector<Eigen::Vector3d> points;
  Frame frame = Frame::kBase;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
};

/// Re-expresses a sensor-frame cloud in the gravity-aligned base frame:
/// p_base = R * p_sensor + t, where `sensor_pose` is the pose of the sensor in
/// the base frame. Throws kInvalidPose on non-finite or non-rigid input and
/// kInvalidFrame if the cloud is already in the base frame.
PointCloud TransformToBase(const PointCloud& cloud,
                           const Eigen::Isometry3d& sensor_pose);

/// Inverse of TransformToBase; used by the simulator to fake camera output.
PointCloud TransformToSensor(const PointCloud& cloud,
                             const Eigen::Isometry3d& sensor_pose);

}  // namespace footfall::terrain
