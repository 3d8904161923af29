#include "footfall/planner/planner.hpp"

#include <chrono>
#include <cmath>

#include "footfall/common/error.hpp"

namespace footfall::planner {

void PlannerConfig::Validate() const {
  ThrowUnless(min_steps >= 1 && min_steps <= max_steps,
              ErrorCode::kInvalidArgument, "need 1 <= min_steps <= max_steps");
  ThrowUnless(budget_mode == BudgetMode::kIterations ? max_iterations > 0
                                                     : time_budget > 0.0,
              ErrorCode::kInvalidArgument, "planning budget must be positive");
}

namespace {

double Uniform(Rng& rng, const Range& r) {
  if (!(r.max > r.min)) return r.min;
  return std::uniform_real_distribution<double>(r.min, r.max)(rng);
}

double BiasedForward(Rng& rng, const Range& r, double sigma) {
  if (!(r.max > r.min)) return r.min;
  if (sigma > 0.0) {
    std::normal_distribution<double> dist(0.8 * r.max, sigma);
    for (int attempt = 0; attempt < 64; ++attempt) {
      const double v = dist(rng);
      if (v >= r.min && v <= r.max) return v;
    }
  }
  return Uniform(rng, r);
}

// (length, score) lexicographic order, smaller leaf index on exact ties.
bool Better(std::size_t len_a, double score_a, int leaf_a, std::size_t len_b,
            double score_b, int leaf_b) {
  if (len_a != len_b) return len_a > len_b;
  if (score_a != score_b) return score_a > score_b;
  return leaf_a < leaf_b;
}

}  // namespace

std::optional<int> RandomSupportFootstep(const FootstepTree& tree, Rng& rng) {
  const auto& eligible = tree.expandable();
  if (eligible.empty()) return std::nullopt;
  std::uniform_int_distribution<std::size_t> pick(0, eligible.size() - 1);
  return eligible[pick(rng)];
}

Footstep RandomFootstep(const Footstep& support, const ReachabilityModel& reach,
                        double forward_bias, Rng& rng) {
  StepOffset offset;
  offset.forward = BiasedForward(rng, reach.forward, forward_bias);
  offset.lateral = Uniform(rng, reach.lateral);
  offset.yaw = Uniform(rng, reach.yaw);
  return ApplyOffset(support, offset);
}

bool ValidityTest(Footstep& candidate, const terrain::SteppableGrid& grid) {
  constexpr double kEps = 1e-9;
  const double res = grid.resolution();
  const OrientedRect rect = candidate.rect();
  const Aabb2 bounds = rect.Bounds();
  const Eigen::Vector2d& o = grid.origin();

  const int ix0 = static_cast<int>(std::floor((bounds.min.x() - o.x()) / res + kEps));
  const int iy0 = static_cast<int>(std::floor((bounds.min.y() - o.y()) / res + kEps));
  const int ix1 = static_cast<int>(std::floor((bounds.max.x() - o.x()) / res - kEps));
  const int iy1 = static_cast<int>(std::floor((bounds.max.y() - o.y()) / res - kEps));
  if (ix0 < 0 || iy0 < 0 || ix1 >= grid.nx() || iy1 >= grid.ny()) return false;

  const double c = std::cos(candidate.yaw), s = std::sin(candidate.yaw);
  // Projection radius of a square cell onto either footprint axis.
  const double cell_r = 0.5 * res * (std::abs(c) + std::abs(s));
  const double hl = 0.5 * rect.length + cell_r - kEps;
  const double hw = 0.5 * rect.width + cell_r - kEps;

  int plane = -1;
  for (int iy = iy0; iy <= iy1; ++iy) {
    const double cy = o.y() + (iy + 0.5) * res - candidate.y;
    for (int ix = ix0; ix <= ix1; ++ix) {
      const double cx = o.x() + (ix + 0.5) * res - candidate.x;
      const double lx = c * cx + s * cy;
      const double ly = -s * cx + c * cy;
      if (std::abs(lx) >= hl || std::abs(ly) >= hw) continue;
      const auto& cell = grid.at(ix, iy);
      if (!cell.steppable) return false;
      if (plane < 0) {
        plane = cell.plane_id;
      } else if (cell.plane_id != plane) {
        return false;
      }
    }
  }
  if (plane < 0) return false;
  const auto centre = grid.Locate(candidate.xy());
  if (!centre) return false;
  candidate.z = grid.at(centre->ix, centre->iy).height;
  return true;
}

std::vector<FootstepPath> FootstepPathCandidates(const FootstepTree& tree) {
  std::vector<FootstepPath> out;
  for (int i = 1; i < static_cast<int>(tree.size()); ++i) {
    if (!tree.IsLeaf(i)) continue;
    FootstepPath p;
    p.steps = tree.PathTo(i);
    p.score = tree.node(i).path_score;
    p.leaf = i;
    out.push_back(std::move(p));
  }
  return out;
}

FootstepPath SelectBest(const std::vector<FootstepPath>& candidates) {
  ThrowUnless(!candidates.empty(), ErrorCode::kNoFeasiblePath,
              "no footstep path candidates");
  std::size_t best = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const auto& a = candidates[i];
    const auto& b = candidates[best];
    if (Better(a.length(), a.score, a.leaf, b.length(), b.score, b.leaf)) best = i;
  }
  return candidates[best];
}

FootstepPath BestFootstepPath(std::vector<FootstepPath> candidates,
                              const terrain::SteppableGrid& grid,
                              const SafetyScorer& scorer) {
  for (auto& c : candidates) c.score = SafetyScore(c.steps, grid, scorer);
  return SelectBest(candidates);
}

PlanResult Plan(const terrain::SteppableGrid& grid, const Footstep& q_init,
                const ReachabilityModel& reach, const SafetyScorer& scorer,
                const PlannerConfig& cfg) {
  using Clock = std::chrono::steady_clock;
  cfg.Validate();
  reach.Validate();
  const auto start = Clock::now();
  const auto deadline =
      start + std::chrono::duration_cast<Clock::duration>(
                  std::chrono::duration<double>(cfg.time_budget));

  Rng rng(cfg.seed);
  FootstepTree tree(q_init, cfg.max_steps);
  int iterations = 0;
  while (true) {
    if (cfg.budget_mode == BudgetMode::kIterations) {
      if (iterations >= cfg.max_iterations) break;
    } else if (Clock::now() >= deadline) {
      break;
    }
    const auto support = RandomSupportFootstep(tree, rng);
    if (!support) break;
    ++iterations;
    const Footstep& sup = tree.node(*support).footstep;
    Footstep candidate = RandomFootstep(sup, reach, cfg.forward_bias, rng);
    if (!ValidityTest(candidate, grid)) continue;
    if (std::abs(candidate.z - sup.z) > reach.max_height_delta) continue;
    const int index = tree.Add(*support, candidate, scorer.StepScore(candidate, grid));
    if (cfg.stop_at_full_depth && tree.node(index).depth == cfg.max_steps) break;
  }

  // Best leaf straight from the tree's cached scores; equivalent to
  // SelectBest(FootstepPathCandidates(tree)) without materialising every path.
  int best = -1;
  for (int i = 1; i < static_cast<int>(tree.size()); ++i) {
    if (!tree.IsLeaf(i)) continue;
    const auto& n = tree.node(i);
    if (best < 0 || Better(static_cast<std::size_t>(n.depth), n.path_score, i,
                           static_cast<std::size_t>(tree.node(best).depth),
                           tree.node(best).path_score, best)) {
      best = i;
    }
  }
  ThrowUnless(best >= 0, ErrorCode::kNoFeasiblePath,
              "no valid footstep found within the planning budget");

  PlanResult result;
  result.path.steps = tree.PathTo(best);
  result.path.score = tree.node(best).path_score;
  result.path.leaf = best;
  result.short_path = static_cast<int>(result.path.length()) < cfg.min_steps;
  result.iterations = iterations;
  result.tree_size = tree.size();
  result.elapsed_us =
      std::chrono::duration<double, std::micro>(Clock::now() - start).count();
  return result;
}

}  // namespace footfall::planner
