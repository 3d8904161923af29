#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "footfall/planner/footstep.hpp"

namespace footfall::gait {

using planner::Footstep;
using planner::Side;

enum class StepState { kPending, kActive, kCompleted };

struct StepData {
  Footstep target;
  double step_duration = 0.5;
  double dsp_fraction = 0.1;
  StepState state = StepState::kPending;

  double dsp_duration() const { return dsp_fraction * step_duration; }
  double swing_duration() const { return step_duration - dsp_duration(); }
};

/// Ordered buffer of timed footstep commands. Step i starts when step i-1
/// ends; the first starts at walk_start(). Each step opens with a double
/// support phase, then swings `target.side` onto `target`.
///
/// Every mutation, including the time-driven advance of the active step,
/// increments revision().
class StepDataBuffer {
 public:
  StepDataBuffer() = default;
  StepDataBuffer(const Footstep& left, const Footstep& right);

  const std::vector<StepData>& entries() const { return entries_; }
  std::uint64_t revision() const { return revision_; }
  /// Index of the active step; -1 before the first step starts and
  /// entries().size() once every step has completed.
  int cursor() const { return cursor_; }
  bool stopping() const { return stopping_; }
  bool walking_started() const { return started_; }
  double walk_start() const { return walk_start_; }
  const Footstep& initial_foot(Side side) const {
    return side == Side::kLeft ? initial_left_ : initial_right_;
  }
  double default_step_duration() const { return default_duration_; }
  double default_dsp_fraction() const { return default_dsp_; }

  void SetDefaultTiming(double step_duration, double dsp_fraction);
  /// Fixes the start time of the first step.
  void StartWalking(double t);
  /// Marks a controlled stop: no further steps are required.
  void BeginStop();
  void Append(const Footstep& target);
  void Append(const StepData& step);

  double StartTime(int i) const;
  double EndTime(int i) const { return StartTime(i) + entries_[i].step_duration; }
  /// End time of the last step, or walk_start() when empty.
  double EndOfSteps() const;

  /// Updates step states for time t. Returns true when the active step changed.
  bool Advance(double t);

  /// Steps that have not started by time t.
  int PendingCount(double t) const;

  /// Where `side` rests (or last landed) before step `i` starts.
  const Footstep& FootBefore(int i, Side side) const;
  /// Where `side` is planted at time t, ignoring an ongoing swing.
  const Footstep& PlantedFoot(Side side, double t) const;

  /// Position-only change of step i's landing target.
  void SetTarget(int i, const Footstep& target);
  /// Drops entries [first, end) and appends `steps` in their place.
  void ReplaceTail(int first, std::vector<StepData> steps);
  void BumpRevision() { ++revision_; }

 private:
  std::vector<StepData> entries_;
  std::vector<double> start_times_;
  Footstep initial_left_;
  Footstep initial_right_;
  double walk_start_ = 0.0;
  double default_duration_ = 0.5;
  double default_dsp_ = 0.1;
  std::uint64_t revision_ = 0;
  int cursor_ = -1;
  bool started_ = false;
  bool stopping_ = false;

  void RecomputeStartTimes();
};

struct SdbUpdateOptions {
  double replan_limit = 0.5;
  /// When false, an active step keeps its landing target and new_steps only
  /// replace pending entries.
  bool retarget_active = true;
  /// Accept fewer than two steps (used when a controlled stop is initiated).
  bool allow_short = false;
};

/// Replaces the active step's landing target (when retargeting) and every
/// pending entry with `new_steps`. Timing of existing entries is kept; extra
/// steps get the buffer's default timing. Throws kRevisionConflict,
/// kInsufficientSteps, kReplanOutOfRange, or kInvalidArgument.
StepDataBuffer UpdateSdb(const StepDataBuffer& sdb,
                         std::span<const Footstep> new_steps,
                         std::uint64_t at_revision,
                         const SdbUpdateOptions& options = {});

/// Single-slot publication point between planner and control loop: readers
/// take immutable snapshots, writers replace the whole buffer only if their
/// base revision is still current.
class SdbChannel {
 public:
  explicit SdbChannel(StepDataBuffer initial);

  std::shared_ptr<const StepDataBuffer> Snapshot() const;
  /// Publishes `next` if the current revision equals `base_revision`.
  bool TryPublish(StepDataBuffer next, std::uint64_t base_revision);
  /// Unconditional replacement, for the single owner of time advancement.
  void Publish(StepDataBuffer next);

 private:
  mutable std::mutex mutex_;
  std::shared_ptr<const StepDataBuffer> current_;
};

}  // namespace footfall::gait
