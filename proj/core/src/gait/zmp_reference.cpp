#include "footfall/gait/zmp_reference.hpp"

#include "footfall/common/error.hpp"

namespace footfall::gait {
namespace {

struct Segment {
  double start;
  double end;
  double dsp;
  Eigen::Vector2d from;   // support point at the start of the ramp
  Eigen::Vector2d stance;
};

class Evaluator {
 public:
  explicit Evaluator(const StepDataBuffer& sdb) {
    const auto& left = sdb.initial_foot(Side::kLeft);
    const auto& right = sdb.initial_foot(Side::kRight);
    standing_ = 0.5 * (left.xy() + right.xy());
    if (!sdb.walking_started()) return;
    walk_start_ = sdb.walk_start();
    const auto& entries = sdb.entries();
    Eigen::Vector2d from = standing_;
    for (int i = 0; i < static_cast<int>(entries.size()); ++i) {
      const Side stance_side = planner::Opposite(entries[i].target.side);
      const Eigen::Vector2d stance = sdb.FootBefore(i, stance_side).xy();
      segments_.push_back({sdb.StartTime(i), sdb.EndTime(i),
                           entries[i].dsp_duration(), from, stance});
      from = stance;
    }
  }

  // Queries must be non-decreasing in t between calls.
  Eigen::Vector2d At(double t) {
    if (segments_.empty() || t < walk_start_) return standing_;
    while (hint_ + 1 < segments_.size() && t >= segments_[hint_].end) ++hint_;
    const Segment& s = segments_[hint_];
    if (t >= s.end) return s.stance;
    const double tau = t - s.start;
    if (s.dsp > 0.0 && tau < s.dsp) {
      const double a = tau / s.dsp;
      return (1.0 - a) * s.from + a * s.stance;
    }
    return s.stance;
  }

 private:
  Eigen::Vector2d standing_{0.0, 0.0};
  double walk_start_ = 0.0;
  std::vector<Segment> segments_;
  std::size_t hint_ = 0;
};

}  // namespace

Eigen::Vector2d ZmpReferenceAt(const StepDataBuffer& sdb, double t) {
  return Evaluator(sdb).At(t);
}

std::vector<Eigen::Vector2d> ZmpReference(const StepDataBuffer& sdb, double t,
                                          const LipmParams& params) {
  params.Validate();
  if (sdb.walking_started() && !sdb.stopping() && !sdb.entries().empty()) {
    ThrowUnless(sdb.PendingCount(t) >= 2, ErrorCode::kInsufficientSteps,
                "preview needs the next two footsteps");
  }
  const int n = params.PreviewSteps();
  std::vector<Eigen::Vector2d> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  Evaluator eval(sdb);
  for (int k = 0; k <= n; ++k) out.push_back(eval.At(t + k * params.dt));
  return out;
}

}  // namespace footfall::gait
