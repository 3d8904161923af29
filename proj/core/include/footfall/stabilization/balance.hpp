#pragma once

#include <Eigen/Core>

namespace footfall::stabilization {

struct CapturePointFeedback {
  double gain = 3.0;
  double omega = 0.0;

  void Validate() const;
};

inline Eigen::Vector2d CapturePoint(const Eigen::Vector2d& position,
                                    const Eigen::Vector2d& velocity,
                                    double omega) {
  return position + velocity / omega;
}

/// Desired ZMP from capture-point error: ref_zmp + k (meas_cp - ref_cp).
Eigen::Vector2d Czmp(const Eigen::Vector2d& ref_cp, const Eigen::Vector2d& meas_cp,
                     const Eigen::Vector2d& ref_zmp,
                     const CapturePointFeedback& fb);

struct FootWeights {
  double left = 0.5;
  double right = 0.5;
};

/// Projects the cZMP onto the segment between the feet and splits the load
/// linearly; the result is clamped so both weights stay in [0, 1].
FootWeights FootWeightDistribution(const Eigen::Vector2d& czmp,
                                   const Eigen::Vector2d& left,
                                   const Eigen::Vector2d& right);

/// First-order low-pass on finite-difference velocity.
class VelocityFilter {
 public:
  VelocityFilter(double dt, double time_constant);

  double Update(double position);
  double value() const { return value_; }
  void Reset(double position, double velocity = 0.0);

 private:
  double dt_;
  double alpha_;
  double last_ = 0.0;
  double value_ = 0.0;
  bool primed_ = false;
};

}  // namespace footfall::stabilization
