#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "footfall/planner/footstep.hpp"
#include "footfall/planner/footstep_tree.hpp"
#include "footfall/planner/safety.hpp"
#include "footfall/terrain/steppable_grid.hpp"

namespace footfall::planner {

enum class BudgetMode { kWallClock, kIterations };

struct PlannerConfig {
  BudgetMode budget_mode = BudgetMode::kIterations;
  double time_budget = 0.005;  // seconds, wall-clock mode
  int max_iterations = 3000;   // iteration mode
  int max_steps = 4;
  int min_steps = 2;
  /// Standard deviation of the truncated Gaussian on the forward offset,
  /// centred at 0.8 * forward.max. Non-positive means uniform.
  double forward_bias = 0.1;
  /// Stop sampling as soon as a max_steps-long branch exists.
  bool stop_at_full_depth = false;
  std::uint64_t seed = 0;

  void Validate() const;
};

using Rng = std::mt19937_64;

/// Uniform draw over nodes shallower than the tree's max depth; nullopt when
/// every node is at full depth.
std::optional<int> RandomSupportFootstep(const FootstepTree& tree, Rng& rng);

/// Samples a swing footstep of the opposite side inside the reachable region
/// of `support`. The landing height is left at the support height until the
/// validity test sets it.
Footstep RandomFootstep(const Footstep& support, const ReachabilityModel& reach,
                        double forward_bias, Rng& rng);

/// True iff every grid cell overlapped by the footprint is steppable and all
/// of them share one plane_id. On success candidate.z is set to the height of
/// the cell under the footprint centre.
bool ValidityTest(Footstep& candidate, const terrain::SteppableGrid& grid);

/// One root-to-leaf path per leaf; empty for a root-only tree. Scores are
/// taken from the tree's cached step scores.
std::vector<FootstepPath> FootstepPathCandidates(const FootstepTree& tree);

/// Scores every candidate against the grid and returns the maximiser of
/// (length, score) under lexicographic order; remaining ties go to the
/// smallest leaf index. Throws kNoFeasiblePath for an empty list.
FootstepPath BestFootstepPath(std::vector<FootstepPath> candidates,
                              const terrain::SteppableGrid& grid,
                              const SafetyScorer& scorer);

/// Same selection rule over candidates whose scores are already filled in.
FootstepPath SelectBest(const std::vector<FootstepPath>& candidates);

struct PlanResult {
  FootstepPath path;
  bool short_path = false;  // path shorter than cfg.min_steps
  int iterations = 0;
  std::size_t tree_size = 0;
  double elapsed_us = 0.0;
};

/// Sampling-based footstep planning: grow a tree of reachable, valid
/// footsteps from `q_init` until the budget runs out, then return the best
/// root-to-leaf path. Throws kNoFeasiblePath when no valid step was found.
PlanResult Plan(const terrain::SteppableGrid& grid, const Footstep& q_init,
                const ReachabilityModel& reach, const SafetyScorer& scorer,
                const PlannerConfig& cfg);

}  // namespace footfall::planner
