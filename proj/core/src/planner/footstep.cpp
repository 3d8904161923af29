#include "footfall/planner/footstep.hpp"

#include "footfall/common/error.hpp"

namespace footfall::planner {

void ReachabilityModel::Validate() const {
  ThrowUnless(forward.min <= forward.max && lateral.min <= lateral.max &&
                  yaw.min <= yaw.max,
              ErrorCode::kInvalidArgument, "reach ranges must satisfy min <= max");
  ThrowUnless(lateral.min > 0.0, ErrorCode::kInvalidArgument,
              "lateral.min must be positive so the feet never cross");
  ThrowUnless(max_height_delta >= 0.0, ErrorCode::kInvalidArgument,
              "max_height_delta must be non-negative");
}

StepOffset RelativeOffset(const Footstep& support, const Footstep& candidate) {
  const Eigen::Vector2d local = support.pose().ToLocal(candidate.xy());
  // A right swing lies on the support foot's -y side.
  const double sign = support.side == Side::kLeft ? -1.0 : 1.0;
  return {local.x(), sign * local.y(), WrapAngle(candidate.yaw - support.yaw)};
}

Footstep ApplyOffset(const Footstep& support, const StepOffset& offset) {
  const double sign = support.side == Side::kLeft ? -1.0 : 1.0;
  const Eigen::Vector2d p =
      support.pose().ToParent({offset.forward, sign * offset.lateral});
  Footstep out;
  out.side = Opposite(support.side);
  out.x = p.x();
  out.y = p.y();
  out.z = support.z;
  out.yaw = WrapAngle(support.yaw + offset.yaw);
  out.footprint = support.footprint;
  return out;
}

bool WithinReach(const ReachabilityModel& reach, const Footstep& support,
                 const Footstep& candidate) {
  if (candidate.side == support.side) return false;
  const StepOffset o = RelativeOffset(support, candidate);
  return reach.forward.Contains(o.forward, 1e-9) &&
         reach.lateral.Contains(o.lateral, 1e-9) &&
         reach.yaw.Contains(o.yaw, 1e-9);
}

}  // namespace footfall::planner
