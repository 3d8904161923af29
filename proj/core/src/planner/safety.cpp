#include "footfall/planner/safety.hpp"

#include <cmath>

#include "footfall/common/error.hpp"

namespace footfall::planner {

SafetyScorer::SafetyScorer(std::vector<Eigen::Vector2d> offsets,
                           double kernel_sigma)
    : offsets_(std::move(offsets)), kernel_sigma_(kernel_sigma) {
  ThrowUnless(!offsets_.empty(), ErrorCode::kInvalidArgument,
              "scorer needs at least one test point");
  ThrowUnless(kernel_sigma > 0.0, ErrorCode::kInvalidArgument,
              "kernel sigma must be positive");
  weights_.reserve(offsets_.size());
  for (const auto& x : offsets_) {
    const double w =
        std::exp(-x.squaredNorm() / (2.0 * kernel_sigma * kernel_sigma));
    weights_.push_back(w);
    weight_sum_ += w;
  }
}

SafetyScorer SafetyScorer::ForFootprint(const Footprint& footprint,
                                        double margin, bool with_ring) {
  const double hl = 0.5 * footprint.length, hw = 0.5 * footprint.width;
  std::vector<Eigen::Vector2d> pts;
  for (double fx : {-1.0, 0.0, 1.0}) {
    for (double fy : {-1.0, 0.0, 1.0}) pts.emplace_back(fx * hl, fy * hw);
  }
  if (with_ring) {
    pts.emplace_back(hl + margin, 0.0);
    pts.emplace_back(-hl - margin, 0.0);
    for (double fx : {-1.0 / 3.0, 1.0 / 3.0}) {
      pts.emplace_back(fx * footprint.length, hw + margin);
      pts.emplace_back(fx * footprint.length, -hw - margin);
    }
  }
  const double sigma = 0.5 * std::hypot(footprint.length, footprint.width);
  return SafetyScorer(std::move(pts), sigma);
}

double SafetyScorer::StepScore(const Footstep& step,
                               const terrain::SteppableGrid& grid) const {
  const Pose2 pose = step.pose();
  double score = 0.0;
  for (std::size_t k = 0; k < offsets_.size(); ++k) {
    if (grid.SteppableAt(pose.ToParent(offsets_[k]))) score += weights_[k];
  }
  return score;
}

double SafetyScore(std::span<const Footstep> steps,
                   const terrain::SteppableGrid& grid,
                   const SafetyScorer& scorer) {
  double total = 0.0;
  for (const auto& s : steps) total += scorer.StepScore(s, grid);
  return total;
}

}  // namespace footfall::planner
