#pragma once

#include <vector>

#include "footfall/planner/footstep.hpp"

namespace footfall::planner {

struct FootstepNode {
  Footstep footstep;
  int parent = -1;
  int depth = 0;
  int children = 0;
  double step_score = 0.0;   // cached StepScore of this node's footstep
  double path_score = 0.0;   // sum of step scores from the root's child down
};

/// Tree of sampled footsteps rooted at the initial support foot. Nodes are
/// append-only, so indices are stable and parents always precede children.
class FootstepTree {
 public:
  FootstepTree(const Footstep& root, int max_depth);

  /// Appends a child of `parent`. The child must be the opposite side.
  int Add(int parent, const Footstep& footstep, double step_score = 0.0);

  const FootstepNode& node(int i) const { return nodes_[i]; }
  const std::vector<FootstepNode>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  int max_depth() const { return max_depth_; }
  static constexpr int kRoot = 0;

  bool IsLeaf(int i) const { return nodes_[i].children == 0; }
  /// Nodes whose depth is below max_depth, in insertion order.
  const std::vector<int>& expandable() const { return expandable_; }

  /// Footsteps from the root's child down to `leaf` (root excluded).
  std::vector<Footstep> PathTo(int leaf) const;

 private:
  std::vector<FootstepNode> nodes_;
  std::vector<int> expandable_;
  int max_depth_;
};

}  // namespace footfall::planner
