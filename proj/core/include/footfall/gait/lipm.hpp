#pragma once

#include <cmath>

namespace footfall::gait {

/// Cart-table (linear inverted pendulum) parameters shared by the reference
/// generator and the preview controller.
struct LipmParams {
  double com_height = 0.7;
  double gravity = 9.81;
  double dt = 0.002;
  double preview_horizon = 1.6;

  void Validate() const;
  int PreviewSteps() const {
    return static_cast<int>(std::lround(preview_horizon / dt));
  }
  double Omega() const { return std::sqrt(gravity / com_height); }
};

}  // namespace footfall::gait
