#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "footfall/gait/lipm.hpp"

namespace footfall::gait {

struct PreviewWeights {
  double error = 1.0;   // Q_e on the integrated ZMP error
  double state = 0.0;   // Q_x on the cart state
  double input = 1e-6;  // R on jerk
};

/// LQ preview tracking gains for the jerk-driven cart-table with integral
/// action: u = -integral * sum(e) - state * x - sum_j preview[j-1] * ref(k+j).
struct PreviewGains {
  double integral = 0.0;
  Eigen::RowVector3d state = Eigen::RowVector3d::Zero();
  std::vector<double> preview;  // j = 1..N

  Eigen::Matrix3d a;
  Eigen::Vector3d b;
  Eigen::RowVector3d c;
  Eigen::Matrix4d riccati;      // P of the augmented problem
  Eigen::Matrix4d closed_loop;  // augmented A - B K

  double dt = 0.0;
  double SpectralRadius() const;
};

/// Solves the augmented discrete Riccati equation by structure-preserving
/// doubling and derives the gains. Throws kNumericalFailure if the iteration
/// does not converge.
PreviewGains ComputePreviewGains(const LipmParams& params,
                                 const PreviewWeights& weights = {});

/// State of one horizontal axis: (position, velocity, acceleration) plus the
/// running ZMP error sum used by the integral term.
struct AxisState {
  Eigen::Vector3d x = Eigen::Vector3d::Zero();
  double error_sum = 0.0;
};

struct ComState {
  AxisState ax;
  AxisState ay;

  Eigen::Vector2d position() const { return {ax.x(0), ay.x(0)}; }
  Eigen::Vector2d velocity() const { return {ax.x(1), ay.x(1)}; }
  Eigen::Vector2d acceleration() const { return {ax.x(2), ay.x(2)}; }
  /// Cart-table output p = c - (z_c / g) * c''.
  Eigen::Vector2d Zmp(const LipmParams& params) const {
    const double k = params.com_height / params.gravity;
    return position() - k * acceleration();
  }

  static ComState AtRest(const Eigen::Vector2d& p) {
    ComState s;
    s.ax.x(0) = p.x();
    s.ay.x(0) = p.y();
    return s;
  }
};

/// One control tick of a single axis. `ref` holds ref(k) .. ref(k + N).
AxisState TickAxis(const AxisState& state, std::span<const double> ref,
                   const PreviewGains& gains);

/// One control tick for both axes; x and y are independent.
ComState TickCom(const ComState& state, std::span<const Eigen::Vector2d> ref,
                 const PreviewGains& gains);

}  // namespace footfall::gait
