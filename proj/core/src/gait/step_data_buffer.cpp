#include "footfall/gait/step_data_buffer.hpp"

#include "footfall/common/error.hpp"

namespace footfall::gait {

StepDataBuffer::StepDataBuffer(const Footstep& left, const Footstep& right)
    : initial_left_(left), initial_right_(right) {
  ThrowUnless(left.side == Side::kLeft && right.side == Side::kRight,
              ErrorCode::kInvalidArgument, "initial feet have the wrong sides");
}

void StepDataBuffer::SetDefaultTiming(double step_duration, double dsp_fraction) {
  ThrowUnless(step_duration > 0.0 && dsp_fraction >= 0.0 && dsp_fraction < 0.5,
              ErrorCode::kInvalidArgument,
              "step duration must be positive and dsp_fraction in [0, 0.5)");
  default_duration_ = step_duration;
  default_dsp_ = dsp_fraction;
}

void StepDataBuffer::StartWalking(double t) {
  walk_start_ = t;
  started_ = true;
  RecomputeStartTimes();
  ++revision_;
}

void StepDataBuffer::BeginStop() {
  stopping_ = true;
  ++revision_;
}

void StepDataBuffer::Append(const Footstep& target) {
  Append(StepData{target, default_duration_, default_dsp_, StepState::kPending});
}

void StepDataBuffer::Append(const StepData& step) {
  ThrowUnless(step.step_duration > 0.0 && step.dsp_fraction >= 0.0 &&
                  step.dsp_fraction < 0.5,
              ErrorCode::kInvalidArgument, "invalid step timing");
  if (!entries_.empty()) {
    ThrowUnless(step.target.side != entries_.back().target.side,
                ErrorCode::kInvalidArgument, "steps must alternate sides");
  }
  entries_.push_back(step);
  entries_.back().state = StepState::kPending;
  RecomputeStartTimes();
  ++revision_;
}

void StepDataBuffer::SetTarget(int i, const Footstep& target) {
  ThrowUnless(i >= 0 && i < static_cast<int>(entries_.size()),
              ErrorCode::kInvalidArgument, "step index out of range");
  ThrowUnless(target.side == entries_[i].target.side,
              ErrorCode::kInvalidArgument, "retarget must keep the swing side");
  entries_[i].target = target;
}

void StepDataBuffer::ReplaceTail(int first, std::vector<StepData> steps) {
  ThrowUnless(first >= 0 && first <= static_cast<int>(entries_.size()),
              ErrorCode::kInvalidArgument, "replacement index out of range");
  entries_.resize(first);
  for (auto& s : steps) {
    if (!entries_.empty()) {
      ThrowUnless(s.target.side != entries_.back().target.side,
                  ErrorCode::kInvalidArgument, "steps must alternate sides");
    }
    s.state = StepState::kPending;
    entries_.push_back(s);
  }
  RecomputeStartTimes();
}

void StepDataBuffer::RecomputeStartTimes() {
  start_times_.resize(entries_.size());
  double t = walk_start_;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    start_times_[i] = t;
    t += entries_[i].step_duration;
  }
}

double StepDataBuffer::StartTime(int i) const { return start_times_[i]; }

double StepDataBuffer::EndOfSteps() const {
  return entries_.empty() ? walk_start_ : EndTime(static_cast<int>(entries_.size()) - 1);
}

bool StepDataBuffer::Advance(double t) {
  if (!started_) return false;
  const int n = static_cast<int>(entries_.size());
  int next = -1;
  if (t >= walk_start_) {
    next = n;
    for (int i = 0; i < n; ++i) {
      if (t < EndTime(i)) {
        next = i;
        break;
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    entries_[i].state = i < next    ? StepState::kCompleted
                        : i == next ? StepState::kActive
                                    : StepState::kPending;
  }
  if (next == cursor_) return false;
  cursor_ = next;
  ++revision_;
  return true;
}

int StepDataBuffer::PendingCount(double t) const {
  if (!started_) return static_cast<int>(entries_.size());
  int count = 0;
  for (int i = 0; i < static_cast<int>(entries_.size()); ++i) {
    if (StartTime(i) > t) ++count;
  }
  return count;
}

const Footstep& StepDataBuffer::FootBefore(int i, Side side) const {
  for (int j = std::min(i, static_cast<int>(entries_.size())) - 1; j >= 0; --j) {
    if (entries_[j].target.side == side) return entries_[j].target;
  }
  return initial_foot(side);
}

const Footstep& StepDataBuffer::PlantedFoot(Side side, double t) const {
  if (started_) {
    for (int j = static_cast<int>(entries_.size()) - 1; j >= 0; --j) {
      if (entries_[j].target.side == side && EndTime(j) <= t) {
        return entries_[j].target;
      }
    }
  }
  return initial_foot(side);
}

StepDataBuffer UpdateSdb(const StepDataBuffer& sdb,
                         std::span<const Footstep> new_steps,
                         std::uint64_t at_revision,
                         const SdbUpdateOptions& options) {
  ThrowUnless(at_revision == sdb.revision(), ErrorCode::kRevisionConflict,
              "buffer moved to revision " + std::to_string(sdb.revision()) +
                  " since revision " + std::to_string(at_revision));
  ThrowUnless(!new_steps.empty() && (new_steps.size() >= 2 || options.allow_short),
              ErrorCode::kInsufficientSteps,
              "continued walking needs at least two footsteps");
  for (std::size_t i = 1; i < new_steps.size(); ++i) {
    ThrowUnless(new_steps[i].side != new_steps[i - 1].side,
                ErrorCode::kInvalidArgument, "new steps must alternate sides");
  }

  const auto& entries = sdb.entries();
  const int n = static_cast<int>(entries.size());
  const int cursor = sdb.cursor();
  const bool has_active = sdb.walking_started() && cursor >= 0 && cursor < n;
  const int first_pending = cursor < 0 ? 0 : std::min(cursor + 1, n);

  StepDataBuffer out = sdb;
  std::size_t k = 0;
  if (has_active && options.retarget_active) {
    const Footstep& old = entries[cursor].target;
    ThrowUnless(new_steps[0].side == old.side, ErrorCode::kInvalidArgument,
                "first new step must retarget the active swing side");
    const double moved = (new_steps[0].position() - old.position()).norm();
    ThrowUnless(moved <= options.replan_limit, ErrorCode::kReplanOutOfRange,
                "landing target moved " + std::to_string(moved) +
                    " m, limit is " + std::to_string(options.replan_limit) + " m");
    out.SetTarget(cursor, new_steps[0]);
    k = 1;
  } else if (first_pending > 0) {
    ThrowUnless(new_steps[0].side != entries[first_pending - 1].target.side,
                ErrorCode::kInvalidArgument,
                "first pending step must alternate with the previous step");
  }

  std::vector<StepData> tail;
  for (std::size_t j = k; j < new_steps.size(); ++j) {
    const int slot = first_pending + static_cast<int>(j - k);
    StepData step;
    step.target = new_steps[j];
    if (slot < n) {
      step.step_duration = entries[slot].step_duration;
      step.dsp_fraction = entries[slot].dsp_fraction;
    } else {
      step.step_duration = sdb.default_step_duration();
      step.dsp_fraction = sdb.default_dsp_fraction();
    }
    tail.push_back(step);
  }
  out.ReplaceTail(first_pending, std::move(tail));
  out.BumpRevision();
  return out;
}

SdbChannel::SdbChannel(StepDataBuffer initial)
    : current_(std::make_shared<const StepDataBuffer>(std::move(initial))) {}

std::shared_ptr<const StepDataBuffer> SdbChannel::Snapshot() const {
  std::lock_guard lock(mutex_);
  return current_;
}

bool SdbChannel::TryPublish(StepDataBuffer next, std::uint64_t base_revision) {
  auto ptr = std::make_shared<const StepDataBuffer>(std::move(next));
  std::lock_guard lock(mutex_);
  if (current_->revision() != base_revision) return false;
  current_ = std::move(ptr);
  return true;
}

void SdbChannel::Publish(StepDataBuffer next) {
  auto ptr = std::make_shared<const StepDataBuffer>(std::move(next));
  std::lock_guard lock(mutex_);
  current_ = std::move(ptr);
}

}  // namespace footfall::gait
