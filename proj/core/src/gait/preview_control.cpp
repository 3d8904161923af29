#include "footfall/gait/preview_control.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "footfall/common/error.hpp"

namespace footfall::gait {

void LipmParams::Validate() const {
  ThrowUnless(com_height > 0.0 && gravity > 0.0 && dt > 0.0,
              ErrorCode::kInvalidArgument,
              "com_height, gravity and dt must be positive");
  ThrowUnless(preview_horizon >= 1.0, ErrorCode::kInvalidArgument,
              "preview horizon must be at least 1 s");
}


double PreviewGains::SpectralRadius() const {
  return closed_loop.eigenvalues().cwiseAbs().maxCoeff();
}

namespace {

// Structure-preserving doubling for X = A'XA - A'XB(R + B'XB)^-1 B'XA + Q.
Eigen::Matrix4d SolveDare(const Eigen::Matrix4d& a, const Eigen::Vector4d& b,
                          const Eigen::Matrix4d& q, double r) {
  Eigen::Matrix4d ak = a;
  Eigen::Matrix4d gk = b * b.transpose() / r;
  Eigen::Matrix4d hk = q;
  const Eigen::Matrix4d eye = Eigen::Matrix4d::Identity();
  for (int it = 0; it < 200; ++it) {
    const Eigen::Matrix4d w = eye + gk * hk;
    const auto lu = w.partialPivLu();
    const Eigen::Matrix4d v1 = lu.solve(ak);
    const Eigen::Matrix4d v2 = lu.solve(gk);
    const Eigen::Matrix4d h_next = hk + v1.transpose() * hk * ak;
    gk += ak * v2 * ak.transpose();
    ak = ak * v1;
    const double change = (h_next - hk).norm();
    hk = h_next;
    if (change <= 1e-13 * hk.norm()) {
      if (!hk.allFinite()) break;
      return 0.5 * (hk + hk.transpose());
    }
  }
  throw Error(ErrorCode::kNumericalFailure,
              "Riccati doubling did not converge");
}

}  // namespace

PreviewGains ComputePreviewGains(const LipmParams& params,
                                 const PreviewWeights& weights) {
  params.Validate();
  ThrowUnless(weights.input > 0.0 && weights.error >= 0.0 && weights.state >= 0.0,
              ErrorCode::kInvalidArgument, "preview weights out of range");
  const double dt = params.dt;
  PreviewGains g;
  g.dt = dt;
  g.a << 1.0, dt, 0.5 * dt * dt, 0.0, 1.0, dt, 0.0, 0.0, 1.0;
  g.b << dt * dt * dt / 6.0, 0.5 * dt * dt, dt;
  g.c << 1.0, 0.0, -params.com_height / params.gravity;

  // Augmented state: (integrated ZMP error, cart state).
  Eigen::Matrix4d at = Eigen::Matrix4d::Zero();
  at(0, 0) = 1.0;
  at.block<1, 3>(0, 1) = g.c * g.a;
  at.block<3, 3>(1, 1) = g.a;
  Eigen::Vector4d bt;
  bt(0) = g.c * g.b;
  bt.tail<3>() = g.b;
  Eigen::Matrix4d qt = Eigen::Matrix4d::Zero();
  qt(0, 0) = weights.error;
  qt.block<3, 3>(1, 1) = weights.state * Eigen::Matrix3d::Identity();
  const double r = weights.input;

  const Eigen::Matrix4d p = SolveDare(at, bt, qt, r);
  g.riccati = p;
  const double denom = r + bt.dot(p * bt);
  const Eigen::RowVector4d k = (bt.transpose() * p * at) / denom;
  g.integral = k(0);
  g.state = k.tail<3>();
  g.closed_loop = at - bt * k;
  ThrowUnless(g.closed_loop.allFinite(), ErrorCode::kNumericalFailure,
              "closed loop is not finite");

  const int n = params.PreviewSteps();
  g.preview.resize(n);
  const Eigen::Vector4d i_t = Eigen::Vector4d::UnitX();
  Eigen::Vector4d x = -g.closed_loop.transpose() * p * i_t;
  g.preview[0] = -g.integral;
  for (int j = 1; j < n; ++j) {
    g.preview[j] = bt.dot(x) / denom;
    x = g.closed_loop.transpose() * x;
  }
  return g;
}

AxisState TickAxis(const AxisState& state, std::span<const double> ref,
                   const PreviewGains& gains) {
  const std::size_t n = gains.preview.size();
  ThrowUnless(ref.size() >= n + 1, ErrorCode::kInvalidArgument,
              "reference window shorter than the preview horizon");
  AxisState next = state;
  const double error = gains.c * state.x - ref[0];
  next.error_sum += error;
  double u = -gains.integral * next.error_sum - gains.state * state.x;
  for (std::size_t j = 0; j < n; ++j) u -= gains.preview[j] * ref[j + 1];
  next.x = gains.a * state.x + gains.b * u;
  return next;
}

ComState TickCom(const ComState& state, std::span<const Eigen::Vector2d> ref,
                 const PreviewGains& gains) {
  const std::size_t n = gains.preview.size();
  ThrowUnless(ref.size() >= n + 1, ErrorCode::kInvalidArgument,
              "reference window shorter than the preview horizon");
  std::vector<double> rx(n + 1), ry(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    rx[j] = ref[j].x();
    ry[j] = ref[j].y();
  }
  return {TickAxis(state.ax, rx, gains), TickAxis(state.ay, ry, gains)};
}

}  // namespace footfall::gait
