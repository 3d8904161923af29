#include "footfall/stabilization/compliant_lipm.hpp"

#include <cmath>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "footfall/common/error.hpp"

namespace footfall::stabilization {

CompliantLipm CompliantLipm::FromModes(double mass, double natural_frequency,
                                       double damping_ratio, double com_height) {
  CompliantLipm m;
  m.mass = mass;
  m.stiffness = mass * natural_frequency * natural_frequency;
  m.damping = 2.0 * damping_ratio * natural_frequency * mass;
  m.com_height = com_height;
  m.Validate();
  return m;
}

void CompliantLipm::Validate() const {
  ThrowUnless(mass > 0.0 && stiffness > 0.0, ErrorCode::kInvalidArgument,
              "mass and stiffness must be positive");
  ThrowUnless(damping >= 0.0, ErrorCode::kInvalidArgument,
              "damping must be non-negative");
  ThrowUnless(com_height > 0.0 && gravity > 0.0, ErrorCode::kInvalidArgument,
              "com_height and gravity must be positive");
}

double CompliantLipm::NaturalFrequency() const { return std::sqrt(stiffness / mass); }

double CompliantLipm::DampingRatio() const {
  return damping / (2.0 * std::sqrt(stiffness * mass));
}

Eigen::Matrix2d CompliantLipm::A() const {
  Eigen::Matrix2d a;
  a << 0.0, 1.0, -stiffness / mass, -damping / mass;
  return a;
}

Eigen::Matrix2d CompliantLipm::B() const {
  Eigen::Matrix2d b;
  b << 0.0, 0.0, stiffness / mass, damping / mass;
  return b;
}

double CompliantLipm::Acceleration(double y_u, double y_u_dot) const {
  return (stiffness * (y_u - state(0)) + damping * (y_u_dot - state(1))) / mass;
}

double CompliantLipm::Zmp(double y_u, double y_u_dot) const {
  return state(0) - com_height / gravity * Acceleration(y_u, y_u_dot);
}

double CompliantLipm::Energy(double y_u) const {
  const double s = state(0) - y_u;
  return 0.5 * mass * state(1) * state(1) + 0.5 * stiffness * s * s;
}

CompliantOutput CompliantStep(const CompliantLipm& model, double y_u,
                              double y_u_dot, double dt) {
  ThrowUnless(dt > 0.0, ErrorCode::kInvalidArgument, "dt must be positive");
  model.Validate();
  Eigen::Matrix4d aug = Eigen::Matrix4d::Zero();
  aug.topLeftCorner<2, 2>() = model.A() * dt;
  aug.topRightCorner<2, 2>() = model.B() * dt;
  const Eigen::Matrix4d phi = aug.exp();
  CompliantLipm next = model;
  next.state = phi.topLeftCorner<2, 2>() * model.state +
               phi.topRightCorner<2, 2>() * Eigen::Vector2d(y_u, y_u_dot);
  return {next.state, next.Zmp(y_u, y_u_dot)};
}

DampingController DampingFeedback(const CompliantLipm& model, double omega,
                                  double zeta) {
  model.Validate();
  ThrowUnless(zeta > 0.0 && zeta <= 1.2, ErrorCode::kInvalidArgument,
              "target damping ratio must lie in (0, 1.2]");
  ThrowUnless(omega > 0.0, ErrorCode::kInvalidArgument,
              "target natural frequency must be positive");
  // Input channel is y_u; the y_u' feed-forward does not enter the feedback.
  const Eigen::Matrix2d a = model.A();
  const Eigen::Vector2d b = model.B().col(0);
  Eigen::Matrix2d ctrb;
  ctrb << b, a * b;
  const Eigen::Matrix2d phi = a * a + 2.0 * zeta * omega * a +
                              omega * omega * Eigen::Matrix2d::Identity();
  DampingController ctrl;
  ctrl.omega = omega;
  ctrl.zeta = zeta;
  ctrl.gains = Eigen::RowVector2d(0.0, 1.0) * ctrb.inverse() * phi;
  return ctrl;
}

Eigen::Matrix2d ClosedLoopMatrix(const CompliantLipm& model,
                                 const DampingController& ctrl) {
  return model.A() - model.B().col(0) * ctrl.gains;
}

CompliantLipm ClosedLoopModel(const CompliantLipm& model,
                              const DampingController& ctrl) {
  // With y_cmd fixed, m x'' = -k(1 + K0) x - (c + k K1) x'.
  CompliantLipm out = model;
  out.stiffness = model.stiffness * (1.0 + ctrl.gains(0));
  out.damping = model.damping + model.stiffness * ctrl.gains(1);
  return out;
}

}  // namespace footfall::stabilization
