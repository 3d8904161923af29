#pragma once

#include <vector>

#include <Eigen/Core>

#include "footfall/gait/lipm.hpp"
#include "footfall/gait/step_data_buffer.hpp"

namespace footfall::gait {

/// Piecewise ZMP reference: during each step's double support the reference
/// ramps linearly from the previous support point to the new stance foot,
/// then holds the stance foot centre through single support. Before walking
/// it sits between the feet; after the last step it holds the final value.
Eigen::Vector2d ZmpReferenceAt(const StepDataBuffer& sdb, double t);

/// Samples over [t, t + preview_horizon] at params.dt (N + 1 samples).
/// Throws kInsufficientSteps while walking with fewer than two pending steps
/// unless the buffer is stopping or holds no steps at all.
std::vector<Eigen::Vector2d> ZmpReference(const StepDataBuffer& sdb, double t,
                                          const LipmParams& params);

}  // namespace footfall::gait
