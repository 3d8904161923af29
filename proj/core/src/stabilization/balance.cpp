#include "footfall/stabilization/balance.hpp"

#include <algorithm>

#include "footfall/common/error.hpp"

namespace footfall::stabilization {

void CapturePointFeedback::Validate() const {
  ThrowUnless(gain > 0.0, ErrorCode::kInvalidArgument,
              "capture point gain must be positive");
  ThrowUnless(omega > 0.0, ErrorCode::kInvalidArgument, "omega must be positive");
}

Eigen::Vector2d Czmp(const Eigen::Vector2d& ref_cp, const Eigen::Vector2d& meas_cp,
                     const Eigen::Vector2d& ref_zmp,
                     const CapturePointFeedback& fb) {
  return ref_zmp + fb.gain * (meas_cp - ref_cp);
}

FootWeights FootWeightDistribution(const Eigen::Vector2d& czmp,
                                   const Eigen::Vector2d& left,
                                   const Eigen::Vector2d& right) {
  const Eigen::Vector2d d = right - left;
  const double len2 = d.squaredNorm();
  ThrowUnless(len2 > 0.0, ErrorCode::kInvalidArgument, "feet coincide");
  const double s = std::clamp((czmp - left).dot(d) / len2, 0.0, 1.0);
  return {1.0 - s, s};
}

VelocityFilter::VelocityFilter(double dt, double time_constant) : dt_(dt) {
  ThrowUnless(dt > 0.0 && time_constant >= 0.0, ErrorCode::kInvalidArgument,
              "filter needs dt > 0 and a non-negative time constant");
  alpha_ = dt / (time_constant + dt);
}

double VelocityFilter::Update(double position) {
  if (!primed_) {
    Reset(position);
    return value_;
  }
  const double raw = (position - last_) / dt_;
  value_ += alpha_ * (raw - value_);
  last_ = position;
  return value_;
}

void VelocityFilter::Reset(double position, double velocity) {
  last_ = position;
  value_ = velocity;
  primed_ = true;
}

}  // namespace footfall::stabilization
