#pragma once

#include <complex>

#include <Eigen/Core>

namespace footfall::stabilization {

/// Spring-damper cart between the commanded body position y_u and the actual
/// body position x:  m x'' = k (y_u - x) + c (y_u' - x').
/// The output is the cart-table ZMP y_zmp = x - (z_c / g) x''.
struct CompliantLipm {
  double mass = 60.0;
  double stiffness = 0.0;
  double damping = 0.0;
  double com_height = 0.7;
  double gravity = 9.81;
  Eigen::Vector2d state = Eigen::Vector2d::Zero();  // x, x'

  /// Builds a model from its modal parameters (rad/s, dimensionless).
  static CompliantLipm FromModes(double mass, double natural_frequency,
                                 double damping_ratio, double com_height = 0.7);

  void Validate() const;
  double NaturalFrequency() const;
  double DampingRatio() const;

  /// Continuous dynamics with input (y_u, y_u').
  Eigen::Matrix2d A() const;
  Eigen::Matrix2d B() const;

  double Acceleration(double y_u, double y_u_dot) const;
  double Zmp(double y_u, double y_u_dot) const;
  /// Kinetic plus spring energy relative to the input position.
  double Energy(double y_u) const;
};

struct CompliantOutput {
  Eigen::Vector2d state;
  double zmp = 0.0;
};

/// Advances the model by dt holding (y_u, y_u') constant. The transition is
/// the exact zero-order-hold discretisation.
CompliantOutput CompliantStep(const CompliantLipm& model, double y_u,
                              double y_u_dot, double dt);

/// Full-state feedback on the tracking error:
///   y_u = y_cmd - K [x - y_cmd, x' - y_cmd'],  y_u' = y_cmd'.
struct DampingController {
  double omega = 0.0;
  double zeta = 0.0;
  Eigen::RowVector2d gains = Eigen::RowVector2d::Zero();

  double Command(const Eigen::Vector2d& state, double y_cmd,
                 double y_cmd_dot) const {
    const Eigen::Vector2d err(state(0) - y_cmd, state(1) - y_cmd_dot);
    return y_cmd - gains.dot(err);
  }
};

/// Pole placement (Ackermann) so that the closed loop has characteristic
/// polynomial s^2 + 2 zeta omega s + omega^2. zeta must lie in (0, 1.2].
DampingController DampingFeedback(const CompliantLipm& model, double omega,
                                  double zeta);

Eigen::Matrix2d ClosedLoopMatrix(const CompliantLipm& model,
                                 const DampingController& ctrl);

/// Closes the loop and returns the model with shifted stiffness and damping.
CompliantLipm ClosedLoopModel(const CompliantLipm& model,
                              const DampingController& ctrl);

}  // namespace footfall::stabilization
