#include "footfall/planner/footstep_tree.hpp"

#include <algorithm>

#include "footfall/common/error.hpp"

namespace footfall::planner {

FootstepTree::FootstepTree(const Footstep& root, int max_depth)
    : max_depth_(max_depth) {
  ThrowUnless(max_depth >= 0, ErrorCode::kInvalidArgument,
              "max_depth must be non-negative");
  nodes_.push_back({root, -1, 0, 0, 0.0, 0.0});
  if (max_depth > 0) expandable_.push_back(kRoot);
}

int FootstepTree::Add(int parent, const Footstep& footstep, double step_score) {
  ThrowUnless(parent >= 0 && parent < static_cast<int>(nodes_.size()),
              ErrorCode::kInvalidArgument, "parent index out of range");
  const FootstepNode& p = nodes_[parent];
  ThrowUnless(footstep.side != p.footstep.side, ErrorCode::kInvalidArgument,
              "child footstep must alternate sides");
  ThrowUnless(p.depth < max_depth_, ErrorCode::kInvalidArgument,
              "parent is already at full depth");
  FootstepNode n{footstep, parent, p.depth + 1, 0, step_score,
                 p.path_score + step_score};
  nodes_[parent].children++;
  nodes_.push_back(n);
  const int index = static_cast<int>(nodes_.size()) - 1;
  if (n.depth < max_depth_) expandable_.push_back(index);
  return index;
}

std::vector<Footstep> FootstepTree::PathTo(int leaf) const {
  std::vector<Footstep> steps;
  for (int i = leaf; i != kRoot && i >= 0; i = nodes_[i].parent) {
    steps.push_back(nodes_[i].footstep);
  }
  std::reverse(steps.begin(), steps.end());
  return steps;
}

}  // namespace footfall::planner
