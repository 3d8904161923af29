#include "footfall/sim/simulator.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <optional>

#include <Eigen/Geometry>

#include "footfall/common/error.hpp"
#include "footfall/common/geometry.hpp"
#include "footfall/gait/preview_control.hpp"
#include "footfall/gait/step_data_buffer.hpp"
#include "footfall/gait/swing_trajectory.hpp"
#include "footfall/gait/zmp_reference.hpp"
#include "footfall/planner/safety.hpp"
#include "footfall/sim/world.hpp"
#include "footfall/stabilization/balance.hpp"
#include "footfall/stabilization/compliant_lipm.hpp"
#include "footfall/terrain/mapping.hpp"

namespace footfall::sim {

const char* ToString(SupportPhase phase) {
  switch (phase) {
    case SupportPhase::kStand: return "stand";
    case SupportPhase::kDouble: return "dsp";
    case SupportPhase::kLeft: return "left";
    case SupportPhase::kRight: return "right";
  }
  return "stand";
}

namespace {

using gait::StepDataBuffer;
using planner::Footstep;
using planner::Side;

constexpr double kTimeEps = 1e-9;

std::uint64_t Mix(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finaliser over the combined value
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

struct Update {
  StepDataBuffer next;
  std::uint64_t base_revision = 0;
  bool retarget = false;
  std::string outcome;
};

struct Cycle {
  int id = 0;
  bool event_driven = false;
  double trigger_t = 0.0;
  double capture_t = 0.0;
  double plan_t = 0.0;
  double apply_t = 0.0;
  int stage = 0;  // 0 capture, 1 plan, 2 apply, 3 done
  bool retried = false;
  std::shared_ptr<const terrain::SteppableGrid> grid;
  std::optional<Update> update;
};

class Engine {
 public:
  Engine(const Scenario& s, const RunOptions& o)
      : sc_(s),
        opts_(o),
        channel_(InitialBuffer(s)),
        gains_(gait::ComputePreviewGains(s.lipm, s.preview)),
        scorer_(planner::SafetyScorer::ForFootprint(s.PlanningFootprint(),
                                                     s.safety_ring_margin)),
        reach_(s.EffectiveReach()) {
    world_.boxes = s.terrain;
    fired_.assign(s.disturbances.size(), false);
    com_ = gait::ComState::AtRest(s.walk.start);

    const double wn = 2.0 * std::numbers::pi * s.stabilization.natural_freq_hz;
    compliant_ = stabilization::CompliantLipm::FromModes(
        s.stabilization.mass, wn, s.stabilization.damping_ratio, s.lipm.com_height);
    compliant_.gravity = s.lipm.gravity;
    damping_ = stabilization::DampingFeedback(compliant_, wn,
                                              s.stabilization.target_damping_ratio);
    body_x_ = Eigen::Vector2d(s.walk.start.x(), 0.0);
    body_y_ = Eigen::Vector2d(s.walk.start.y(), 0.0);
    cp_.gain = s.stabilization.cp_gain;
    cp_.omega = s.lipm.Omega();
    cp_.Validate();

    report_.scenario = s.name;
    report_.seed = s.seed;
  }

  RunReport Run() {
    const double dt = sc_.lipm.dt;
    LaunchCycle(0.0, false);
    for (long k = 0;; ++k) {
      const double t = static_cast<double>(k) * dt;
      if (t > sc_.sim.max_time) {
        Fail("Timeout");
        break;
      }
      AdvanceBuffer(t);
      if (failed_) break;
      ProcessCycle(t);
      if (failed_) break;
      CheckDisturbances(t);
      if (failed_) break;
      ControlTick(t, dt);
      if (failed_) break;
      if (Finished(t)) break;
    }
    Finalize();
    return std::move(report_);
  }

 private:
  static StepDataBuffer InitialBuffer(const Scenario& s) {
    Footstep left, right;
    left.side = Side::kLeft;
    right.side = Side::kRight;
    left.footprint = right.footprint = s.footprint;
    left.x = right.x = s.walk.start.x();
    left.y = s.walk.start.y() + 0.5 * s.walk.stance_width;
    right.y = s.walk.start.y() - 0.5 * s.walk.stance_width;
    for (Footstep* f : {&left, &right}) {
      for (const auto& b : s.terrain) {
        if (b.TopFace().Contains(f->xy())) f->z = std::max(f->z, b.TopZ());
      }
    }
    StepDataBuffer sdb(left, right);
    sdb.SetDefaultTiming(s.walk.step_time, s.walk.dsp_fraction);
    return sdb;
  }

  void Fail(const std::string& reason) {
    if (failed_) return;
    failed_ = true;
    report_.failure_reason = reason;
  }

  Footstep TrueFoot(Footstep f) const {
    f.footprint = sc_.footprint;
    return f;
  }

  Footstep PlanningFoot(Footstep f) const {
    f.footprint = sc_.PlanningFootprint();
    return f;
  }

  // ---- perception cycles -------------------------------------------------

  void LaunchCycle(double t, bool event_driven) {
    if (inflight_ && inflight_->stage < 3 && inflight_->event_driven) {
      RecordEvent(*inflight_, std::numeric_limits<double>::quiet_NaN(), "Preempted");
    }
    Cycle c;
    c.id = report_.perception_cycles++;
    c.event_driven = event_driven;
    c.trigger_t = t;
    c.capture_t = t + sc_.latency.depth_acquire;
    c.plan_t = c.capture_t + sc_.latency.mapping;
    c.apply_t = c.plan_t + sc_.latency.planning + sc_.latency.comm;
    inflight_ = std::move(c);
  }

  void ProcessCycle(double t) {
    if (!inflight_) return;
    Cycle& c = *inflight_;
    if (c.stage == 0 && t + kTimeEps >= c.capture_t) {
      Capture(c);
      c.stage = 1;
    }
    if (c.stage == 1 && t + kTimeEps >= c.plan_t) {
      PlanStage(c, t);
      c.stage = c.update ? 2 : 3;
    }
    if (c.stage == 2 && t + kTimeEps >= c.apply_t) {
      Apply(c, t);
    }
    if (inflight_ && inflight_->stage == 3) inflight_.reset();
  }

  void Capture(Cycle& c) {
    const auto sdb = channel_.Snapshot();
    const double t = c.capture_t;
    const Eigen::Vector2d mid =
        0.5 * (sdb->PlantedFoot(Side::kLeft, t).xy() + sdb->PlantedFoot(Side::kRight, t).xy());
    terrain::MappingConfig cfg = sc_.mapping;
    cfg.roi.origin = {mid.x() - sc_.sim.roi_rear_offset, mid.y()};
    cfg.seed = Mix(sc_.seed, 4 * static_cast<std::uint64_t>(c.id) + 1);
    Aabb2 window = cfg.roi.Footprint();
    window.min -= Eigen::Vector2d::Constant(0.02);
    window.max += Eigen::Vector2d::Constant(0.02);
    const auto visible = ClipToWindow(world_.boxes, window);
    if (visible.empty()) {
      c.grid = std::make_shared<terrain::SteppableGrid>(
          terrain::BuildSteppableGrid({}, terrain::PointCloud{}, cfg));
      return;
    }
    const auto cloud = terrain::GenerateSyntheticCloud(
        visible, sc_.cloud_sigma, sc_.cloud_density,
        Mix(sc_.seed, 4 * static_cast<std::uint64_t>(c.id) + 2));
    Eigen::Isometry3d camera = Eigen::Isometry3d::Identity();
    camera.translate(Eigen::Vector3d(mid.x(), mid.y(), sc_.sim.camera_height));
    camera.rotate(Eigen::AngleAxisd(DegToRad(sc_.sim.camera_pitch_deg),
                                    Eigen::Vector3d::UnitY()));
    const auto sensor_cloud = terrain::TransformToSensor(cloud, camera);
    c.grid = std::make_shared<terrain::SteppableGrid>(
        terrain::MapTerrain(sensor_cloud, camera, cfg).grid);
  }

  std::optional<planner::PlanResult> PlanFrom(const Footstep& q, const Cycle& c,
                                              int attempt) const {
    planner::PlannerConfig cfg = sc_.planner;
    cfg.seed = Mix(sc_.seed, 4 * static_cast<std::uint64_t>(c.id) + 3 + 1000003ULL * attempt);
    try {
      auto r = planner::Plan(*c.grid, PlanningFoot(q), reach_, scorer_, cfg);
      for (auto& s : r.path.steps) s = TrueFoot(s);
      return r;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNoFeasiblePath) throw;
      return std::nullopt;
    }
  }

  bool ValidOn(const Footstep& f, const terrain::SteppableGrid& grid) const {
    Footstep probe = PlanningFoot(f);
    if (!planner::ValidityTest(probe, grid)) return false;
    return std::abs(probe.z - f.z) <= sc_.sim.touchdown_height_tol;
  }

  // Cuts the plan after the first step past the course end.
  bool TruncateAtCourseEnd(std::vector<Footstep>& steps) const {
    for (std::size_t i = 0; i < steps.size(); ++i) {
      if (steps[i].x >= sc_.walk.course_end) {
        steps.resize(i + 1);
        return true;
      }
    }
    return false;
  }

  void StopWith(StepDataBuffer& next, const std::string& reason) {
    next.BeginStop();
    if (stop_reason_.empty()) stop_reason_ = reason;
  }

  void PlanStage(Cycle& c, double t) {
    const auto snap = channel_.Snapshot();
    const StepDataBuffer& s = *snap;
    if (s.stopping()) return;
    const int n = static_cast<int>(s.entries().size());
    const int cursor = s.cursor();

    Update up;
    up.base_revision = s.revision();
    gait::SdbUpdateOptions opt;
    opt.replan_limit = sc_.replan_limit;

    if (!s.walking_started() || cursor < 0) {
      const Footstep q = s.initial_foot(Side::kLeft);
      const auto r = PlanFrom(q, c, c.retried ? 1 : 0);
      up.next = s;
      if (!r || r->short_path) {
        StopWith(up.next, r ? "ShortPath" : "NoFeasiblePath");
        up.next.BumpRevision();
        up.outcome = "Stopped";
      } else {
        auto steps = r->path.steps;
        const bool end = TruncateAtCourseEnd(steps);
        opt.retarget_active = false;
        opt.allow_short = end;
        up.next = gait::UpdateSdb(s, steps, s.revision(), opt);
        if (!s.walking_started()) up.next.StartWalking(c.apply_t + sc_.walk.start_delay);
        if (end) StopWith(up.next, "CourseEnd");
        up.outcome = "Planned";
      }
      c.update = std::move(up);
      return;
    }
    if (cursor >= n) return;

    const Footstep anchor = s.entries()[cursor].target;
    const bool valid = ValidOn(anchor, *c.grid);
    if (valid) anchor_grid_ = c.grid;

    if (!valid && sc_.replan_enabled) {
      Retarget(c, s, cursor, anchor, t);
      return;
    }

    const auto r = PlanFrom(anchor, c, c.retried ? 1 : 0);
    opt.retarget_active = false;
    if (!r || r->short_path) {
      up.next = s;
      if (r) {
        opt.allow_short = true;
        auto steps = r->path.steps;
        TruncateAtCourseEnd(steps);
        up.next = gait::UpdateSdb(s, steps, s.revision(), opt);
      } else {
        up.next.ReplaceTail(cursor + 1, {});
        up.next.BumpRevision();
      }
      StopWith(up.next, r ? "ShortPath" : "NoFeasiblePath");
      up.outcome = "Stopped";
    } else {
      auto steps = r->path.steps;
      const bool end = TruncateAtCourseEnd(steps);
      opt.allow_short = end;
      up.next = gait::UpdateSdb(s, steps, s.revision(), opt);
      if (end) StopWith(up.next, "CourseEnd");
      up.outcome = "Replanned";
    }
    c.update = std::move(up);
  }

  void Retarget(Cycle& c, const StepDataBuffer& s, int cursor, const Footstep& anchor,
                double t) {
    (void)t;
    std::vector<Footstep> steps;
    bool tracked = false;
    if (anchor_grid_) {
      if (const auto d = TrackPatchDisplacement(*anchor_grid_, *c.grid, anchor.xy())) {
        Footstep moved = PlanningFoot(anchor);
        moved.x += d->x();
        moved.y += d->y();
        if (planner::ValidityTest(moved, *c.grid)) {
          steps.push_back(TrueFoot(moved));
          tracked = true;
          if (const auto r = PlanFrom(steps.front(), c, c.retried ? 1 : 0)) {
            steps.insert(steps.end(), r->path.steps.begin(), r->path.steps.end());
          }
        }
      }
    }
    if (!tracked) {
      const Footstep stance = s.FootBefore(cursor, planner::Opposite(anchor.side));
      if (const auto r = PlanFrom(stance, c, c.retried ? 1 : 0)) steps = r->path.steps;
    }
    if (steps.empty()) {
      RecordEvent(c, std::numeric_limits<double>::quiet_NaN(), "NoFeasiblePath");
      return;
    }
    const bool end = TruncateAtCourseEnd(steps);
    gait::SdbUpdateOptions opt;
    opt.replan_limit = sc_.replan_limit;
    opt.retarget_active = true;
    opt.allow_short = true;
    Update up;
    up.base_revision = s.revision();
    up.retarget = true;
    try {
      up.next = gait::UpdateSdb(s, steps, s.revision(), opt);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kReplanOutOfRange) throw;
      RecordEvent(c, std::numeric_limits<double>::quiet_NaN(), "ReplanOutOfRange");
      Fail("ReplanOutOfRange");
      return;
    }
    if (end) {
      StopWith(up.next, "CourseEnd");
    } else if (steps.size() < 2) {
      StopWith(up.next, "ShortPath");
    }
    up.outcome = tracked ? "Retargeted" : "RetargetedByPlan";
    c.update = std::move(up);
  }

  void Apply(Cycle& c, double t) {
    Update& up = *c.update;
    const auto current = channel_.Snapshot();
    if (current->revision() != up.base_revision) {
      ++report_.revision_conflicts;
      c.update.reset();
      if (!c.retried) {
        // Re-run planning on the same map against the fresh buffer.
        c.retried = true;
        c.plan_t = t;
        c.apply_t = t + sc_.latency.planning + sc_.latency.comm;
        PlanStage(c, t);
        c.stage = c.update ? 2 : 3;
      } else {
        RecordEvent(c, std::numeric_limits<double>::quiet_NaN(), "RevisionConflict");
        c.stage = 3;
      }
      return;
    }

    std::optional<gait::SwingTrajectory> new_swing;
    const int cursor = current->cursor();
    if (up.retarget && swing_ && swing_step_ == cursor && t < swing_->end_time()) {
      const Footstep& target = up.next.entries()[cursor].target;
      try {
        new_swing = gait::RetargetSwing(*swing_, std::max(t, swing_->t0), target,
                                        sc_.retarget_window);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kRetargetTooLate) throw;
        RecordEvent(c, std::numeric_limits<double>::quiet_NaN(), "RetargetTooLate");
        c.stage = 3;
        return;
      }
    }
    if (!channel_.TryPublish(std::move(up.next), up.base_revision)) {
      ++report_.revision_conflicts;
      c.stage = 3;
      return;
    }
    if (new_swing) swing_ = std::move(new_swing);
    if (c.event_driven || up.retarget) RecordEvent(c, c.apply_t, up.outcome);
    c.stage = 3;
  }

  void RecordEvent(const Cycle& c, double applied_t, const std::string& outcome) {
    ReplanEvent e;
    e.trigger_t = c.trigger_t;
    e.sdb_update_t = applied_t;
    e.latency = applied_t - c.trigger_t;
    e.outcome = outcome;
    report_.replan_events.push_back(e);
  }

  // ---- disturbances ------------------------------------------------------

  void CheckDisturbances(double t) {
    const auto snap = channel_.Snapshot();
    for (std::size_t i = 0; i < sc_.disturbances.size(); ++i) {
      if (fired_[i]) continue;
      const auto& d = sc_.disturbances[i];
      bool fire = false;
      if (d.time) {
        fire = t + kTimeEps >= *d.time;
      } else if (swing_ && swing_step_ == snap->cursor() && t >= swing_->t0 &&
                 t <= swing_->end_time()) {
        const double phase = (t - swing_->t0) / swing_->duration;
        const auto* stone = world_.Find(d.stone_id);
        fire = phase + kTimeEps >= *d.swing_phase && stone &&
               stone->TopFace().Contains(swing_->target.xy());
      }
      if (!fire) continue;
      fired_[i] = true;
      world_ = ApplyDisturbance(world_, d.stone_id, d.displacement);
      if (sc_.replan_enabled) LaunchCycle(t, true);
    }
  }

  // ---- control loop ------------------------------------------------------

  void AdvanceBuffer(double t) {
    StepDataBuffer s = *channel_.Snapshot();
    const int before = s.cursor();
    if (s.Advance(t)) {
      const int after = s.cursor();
      for (int j = std::max(before, 0); j < after; ++j) {
        Touchdown(s, j);
        if (failed_) break;
      }
      channel_.Publish(s);
    }
    if (failed_) return;

    const int c = s.cursor();
    const int n = static_cast<int>(s.entries().size());
    if (s.walking_started() && c >= 0 && c < n && swing_step_ != c) {
      const auto& e = s.entries()[c];
      const double ssp = s.StartTime(c) + e.dsp_duration();
      if (t + kTimeEps >= ssp) {
        swing_ = gait::MakeSwingTrajectory(s.FootBefore(c, e.target.side), e.target, ssp,
                                           e.swing_duration(), sc_.walk.swing_apex);
        swing_step_ = c;
        LaunchCycle(t, false);
      }
    }

    if (s.walking_started() && !s.stopping() && s.PendingCount(t) < 2) {
      StepDataBuffer next = s;
      StopWith(next, "PendingExhausted");
      channel_.Publish(std::move(next));
    }
  }

  void Touchdown(const StepDataBuffer& s, int j) {
    sim::Touchdown td;
    td.index = j;
    td.t = s.EndTime(j);
    td.step = TrueFoot(s.entries()[j].target);
    td.coverage = CheckTouchdown(td.step, world_.boxes, sc_.sim.touchdown_height_tol);
    if (td.coverage > 1.0 - 1e-9) td.coverage = 1.0;
    report_.touchdowns.push_back(td);
    if (swing_step_ == j) swing_.reset();
    if (td.step.x >= sc_.walk.course_end) reached_end_ = true;
    if (td.coverage < 1.0) Fail("FootOffTerrain");
  }

  SupportPhase Phase(const StepDataBuffer& s, double t) const {
    const int c = s.cursor();
    const int n = static_cast<int>(s.entries().size());
    if (!s.walking_started() || c < 0 || c >= n) return SupportPhase::kStand;
    const auto& e = s.entries()[c];
    if (t < s.StartTime(c) + e.dsp_duration()) return SupportPhase::kDouble;
    return e.target.side == Side::kLeft ? SupportPhase::kRight : SupportPhase::kLeft;
  }

  void ControlTick(double t, double dt) {
    last_t_ = t;
    const auto snap = channel_.Snapshot();
    const StepDataBuffer& s = *snap;
    const auto ref = gait::ZmpReference(s, t, sc_.lipm);
    com_ = gait::TickCom(com_, ref, gains_);
    const Eigen::Vector2d zmp = com_.Zmp(sc_.lipm);

    const SupportPhase phase = Phase(s, t);
    const Footstep left = TrueFoot(s.PlantedFoot(Side::kLeft, t));
    const Footstep right = TrueFoot(s.PlantedFoot(Side::kRight, t));
    std::vector<Eigen::Vector2d> corners;
    auto add = [&](const Footstep& f) {
      for (const auto& p : f.rect().Corners()) corners.push_back(p);
    };
    if (phase != SupportPhase::kRight) add(left);
    if (phase != SupportPhase::kLeft) add(right);
    const double outside = SignedDistanceToConvex(ConvexHull(corners), zmp);
    outside_time_ = outside > sc_.sim.fall_margin ? outside_time_ + dt : 0.0;
    if (outside_time_ > sc_.sim.fall_duration) {
      Fail("ZmpOutsideSupport");
      return;
    }

    // Compliant body in a parallel diagnostic channel.
    const Eigen::Vector2d pos = com_.position(), vel = com_.velocity();
    auto drive = [&](Eigen::Vector2d& body, double y_cmd, double y_cmd_dot) {
      stabilization::CompliantLipm m = compliant_;
      m.state = body;
      const double y_u = damping_.Command(body, y_cmd, y_cmd_dot);
      const auto out = stabilization::CompliantStep(m, y_u, y_cmd_dot, dt);
      body = out.state;
      return out.zmp;
    };
    const double zmp_meas_x = drive(body_x_, pos.x(), vel.x());
    const double zmp_meas_y = drive(body_y_, pos.y(), vel.y());
    const Eigen::Vector2d ref_cp = stabilization::CapturePoint(pos, vel, cp_.omega);
    const Eigen::Vector2d meas_cp = stabilization::CapturePoint(
        {body_x_(0), body_y_(0)}, {body_x_(1), body_y_(1)}, cp_.omega);
    const Eigen::Vector2d czmp = stabilization::Czmp(ref_cp, meas_cp, zmp, cp_);
    stabilization::FootWeights w;
    if (phase == SupportPhase::kLeft) {
      w = {1.0, 0.0};
    } else if (phase == SupportPhase::kRight) {
      w = {0.0, 1.0};
    } else {
      w = stabilization::FootWeightDistribution(czmp, left.xy(), right.xy());
    }

    if (!opts_.record_telemetry) return;
    TelemetryRow row;
    row.t = t;
    row.com_x = pos.x();
    row.com_y = pos.y();
    row.com_vx = vel.x();
    row.com_vy = vel.y();
    row.zmp_ref_x = ref.front().x();
    row.zmp_ref_y = ref.front().y();
    row.zmp_meas_x = zmp_meas_x;
    row.zmp_meas_y = zmp_meas_y;
    Eigen::Vector3d foot;
    if (swing_) {
      foot = swing_->Position(t);
    } else {
      const Footstep& f = last_swing_side_ == Side::kLeft ? left : right;
      foot = f.position();
    }
    if (swing_) last_swing_side_ = swing_->target.side;
    row.swing_x = foot.x();
    row.swing_y = foot.y();
    row.swing_z = foot.z();
    row.sdb_revision = s.revision();
    row.support_phase = phase;
    row.czmp_x = czmp.x();
    row.czmp_y = czmp.y();
    row.w_left = w.left;
    row.w_right = w.right;
    report_.telemetry.push_back(row);
  }

  bool Finished(double t) const {
    const auto s = channel_.Snapshot();
    if (!s->stopping()) return false;
    const int n = static_cast<int>(s->entries().size());
    if (s->walking_started() && s->cursor() < n) return false;
    const double end = s->walking_started() ? s->EndOfSteps() : 0.0;
    return t >= end + sc_.sim.settle_time;
  }

  void Finalize() {
    const auto s = channel_.Snapshot();
    report_.duration = last_t_;
    if (!report_.touchdowns.empty() && s->walking_started()) {
      const auto& last = report_.touchdowns.back();
      const double span = last.t - s->walk_start();
      if (span > 0.0) report_.mean_speed = (last.step.x - sc_.walk.start.x()) / span;
    }
    report_.speed_target_met = report_.mean_speed >= sc_.walk.speed_target;
    if (!failed_ && !reached_end_) {
      failed_ = true;
      report_.failure_reason = "Stopped";
      if (!stop_reason_.empty() && stop_reason_ != "CourseEnd") {
        report_.failure_reason += ":" + stop_reason_;
      }
    }
    report_.success = !failed_;
  }

  const Scenario& sc_;
  RunOptions opts_;
  World world_;
  gait::SdbChannel channel_;
  gait::PreviewGains gains_;
  planner::SafetyScorer scorer_;
  planner::ReachabilityModel reach_;
  gait::ComState com_;
  std::optional<gait::SwingTrajectory> swing_;
  int swing_step_ = -1;
  Side last_swing_side_ = Side::kRight;
  std::optional<Cycle> inflight_;
  std::shared_ptr<const terrain::SteppableGrid> anchor_grid_;
  std::vector<bool> fired_;
  double outside_time_ = 0.0;
  double last_t_ = 0.0;
  bool failed_ = false;
  bool reached_end_ = false;
  std::string stop_reason_;

  stabilization::CompliantLipm compliant_;
  stabilization::DampingController damping_;
  stabilization::CapturePointFeedback cp_;
  Eigen::Vector2d body_x_ = Eigen::Vector2d::Zero();
  Eigen::Vector2d body_y_ = Eigen::Vector2d::Zero();

  RunReport report_;
};

}  // namespace

RunReport Run(const Scenario& scenario, const RunOptions& options) {
  scenario.Validate();
  Engine engine(scenario, options);
  return engine.Run();
}

}  // namespace footfall::sim
