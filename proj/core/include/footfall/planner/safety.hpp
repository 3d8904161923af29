#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "footfall/planner/footstep.hpp"
#include "footfall/terrain/steppable_grid.hpp"

namespace footfall::planner {

/// Test points around a footstep, each weighted by an RBF of its distance to
/// the foot centre: w_k = exp(-|x_k|^2 / (2 sigma^2)).
class SafetyScorer {
 public:
  SafetyScorer(std::vector<Eigen::Vector2d> offsets, double kernel_sigma);

  /// 3x3 lattice over the footprint (corners, edge midpoints, centre) plus
  /// six points on a ring `margin` outside the boundary; sigma is half the
  /// footprint diagonal.
  static SafetyScorer ForFootprint(const Footprint& footprint,
                                   double margin = 0.02, bool with_ring = true);

  const std::vector<Eigen::Vector2d>& offsets() const { return offsets_; }
  const std::vector<double>& weights() const { return weights_; }
  double kernel_sigma() const { return kernel_sigma_; }
  double WeightSum() const { return weight_sum_; }

  /// Weighted count of this step's test points lying over steppable cells.
  double StepScore(const Footstep& step, const terrain::SteppableGrid& grid) const;

 private:
  std::vector<Eigen::Vector2d> offsets_;
  std::vector<double> weights_;
  double kernel_sigma_;
  double weight_sum_ = 0.0;
};

struct FootstepPath {
  std::vector<Footstep> steps;
  double score = 0.0;
  int leaf = -1;  // tree node the path ends at, -1 if not from a tree

  std::size_t length() const { return steps.size(); }
};

/// Sum of StepScore over the path; lies in [0, M * WeightSum()].
double SafetyScore(std::span<const Footstep> steps,
                   const terrain::SteppableGrid& grid, const SafetyScorer& scorer);

}  // namespace footfall::planner
