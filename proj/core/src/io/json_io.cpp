#include "footfall/io/json_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include <nlohmann/json.hpp>

#include "footfall/common/error.hpp"
#include "footfall/common/geometry.hpp"

namespace footfall::io {

using nlohmann::json;

namespace {

[[noreturn]] void ParseFail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::kParseError, (path.empty() ? std::string("<root>") : path) + ": " + what);
}

std::string Join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

json Parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParseError, std::string("malformed JSON: ") + e.what());
  }
}

// Typed access with the key path in every diagnostic.
struct Node {
  const json& j;
  std::string path;

  Node operator[](const std::string& key) const {
    if (!j.is_object()) ParseFail(path, "expected an object");
    if (!j.contains(key)) ParseFail(Join(path, key), "missing key");
    return {j.at(key), Join(path, key)};
  }
  bool has(const std::string& key) const { return j.is_object() && j.contains(key); }
  double num() const {
    if (!j.is_number()) ParseFail(path, "expected a number");
    return j.get<double>();
  }
  long long integer() const {
    if (!j.is_number_integer() && !(j.is_number() && std::trunc(j.get<double>()) == j.get<double>())) {
      ParseFail(path, "expected an integer");
    }
    return j.is_number_integer() ? j.get<long long>() : static_cast<long long>(j.get<double>());
  }
  std::uint64_t unsigned_integer() const {
    if (j.is_number_unsigned()) return j.get<std::uint64_t>();
    const long long v = integer();
    if (v < 0) ParseFail(path, "expected a non-negative integer");
    return static_cast<std::uint64_t>(v);
  }
  bool boolean() const {
    if (!j.is_boolean()) ParseFail(path, "expected true or false");
    return j.get<bool>();
  }
  std::string str() const {
    if (!j.is_string()) ParseFail(path, "expected a string");
    return j.get<std::string>();
  }
  std::size_t size() const {
    if (!j.is_array()) ParseFail(path, "expected an array");
    return j.size();
  }
  Node at(std::size_t i) const { return {j.at(i), path + "." + std::to_string(i)}; }
  template <int N>
  Eigen::Matrix<double, N, 1> vec() const {
    if (size() != N) ParseFail(path, "expected " + std::to_string(N) + " numbers");
    Eigen::Matrix<double, N, 1> v;
    for (int i = 0; i < N; ++i) v(i) = at(i).num();
    return v;
  }
  planner::Range range() const {
    const auto v = vec<2>();
    return {v(0), v(1)};
  }
};

json Vec(const Eigen::Ref<const Eigen::VectorXd>& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json Num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

// Every key of `doc` must exist in `schema`; arrays are taken as a whole.
void CheckKeys(const json& doc, const json& schema, const std::string& path) {
  if (!doc.is_object()) return;
  if (!schema.is_object()) ParseFail(path, "expected a value, got an object");
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const std::string p = Join(path, it.key());
    if (!schema.contains(it.key())) ParseFail(p, "unknown key");
    const json& s = schema.at(it.key());
    if (s.is_object()) {
      if (!it.value().is_object()) ParseFail(p, "expected an object");
      CheckKeys(it.value(), s, p);
    }
  }
}

void Merge(json& into, const json& from) {
  for (auto it = from.begin(); it != from.end(); ++it) {
    if (it.value().is_object() && into.contains(it.key()) && into[it.key()].is_object()) {
      Merge(into[it.key()], it.value());
    } else {
      into[it.key()] = it.value();
    }
  }
}

const char* BudgetName(planner::BudgetMode m) {
  return m == planner::BudgetMode::kIterations ? "iterations" : "wall_clock";
}

json BoxJson(const terrain::TerrainBox& b) {
  json j{{"id", b.id}, {"center", Vec(b.center)}, {"size", Vec(b.size)}};
  if (b.sample_sides) j["sample_sides"] = true;
  return j;
}

terrain::TerrainBox BoxFrom(const Node& n) {
  CheckKeys(n.j, json{{"id", 0}, {"center", 0}, {"size", 0}, {"sample_sides", false}}, n.path);
  terrain::TerrainBox b;
  b.id = static_cast<int>(n["id"].integer());
  b.center = n["center"].vec<3>();
  b.size = n["size"].vec<3>();
  if (n.has("sample_sides")) b.sample_sides = n["sample_sides"].boolean();
  return b;
}

json DisturbanceJson(const sim::Disturbance& d) {
  json j{{"stone_id", d.stone_id}, {"displacement", Vec(d.displacement)}};
  if (d.time) j["time"] = *d.time;
  if (d.swing_phase) j["swing_phase"] = *d.swing_phase;
  return j;
}

sim::Disturbance DisturbanceFrom(const Node& n) {
  CheckKeys(n.j, json{{"stone_id", 0}, {"displacement", 0}, {"time", 0}, {"swing_phase", 0}},
            n.path);
  sim::Disturbance d;
  d.stone_id = static_cast<int>(n["stone_id"].integer());
  d.displacement = n["displacement"].vec<2>();
  if (n.has("time")) d.time = n["time"].num();
  if (n.has("swing_phase")) d.swing_phase = n["swing_phase"].num();
  return d;
}

json ReachJson(const planner::ReachabilityModel& r) {
  return {{"forward", {r.forward.min, r.forward.max}},
          {"lateral", {r.lateral.min, r.lateral.max}},
          {"yaw_deg", {RadToDeg(r.yaw.min), RadToDeg(r.yaw.max)}},
          {"max_height_delta", r.max_height_delta}};
}

planner::ReachabilityModel ReachFrom(const Node& n) {
  planner::ReachabilityModel r;
  r.forward = n["forward"].range();
  r.lateral = n["lateral"].range();
  const auto yaw = n["yaw_deg"].range();
  r.yaw = {DegToRad(yaw.min), DegToRad(yaw.max)};
  r.max_height_delta = n["max_height_delta"].num();
  return r;
}

json PlannerJson(const planner::PlannerConfig& p) {
  return {{"budget_mode", BudgetName(p.budget_mode)},
          {"time_budget", p.time_budget},
          {"max_iterations", p.max_iterations},
          {"max_steps", p.max_steps},
          {"min_steps", p.min_steps},
          {"forward_bias", p.forward_bias},
          {"stop_at_full_depth", p.stop_at_full_depth},
          {"seed", p.seed}};
}

planner::PlannerConfig PlannerFrom(const Node& n) {
  planner::PlannerConfig p;
  const std::string mode = n["budget_mode"].str();
  if (mode == "iterations") {
    p.budget_mode = planner::BudgetMode::kIterations;
  } else if (mode == "wall_clock") {
    p.budget_mode = planner::BudgetMode::kWallClock;
  } else {
    ParseFail(n["budget_mode"].path, "expected \"iterations\" or \"wall_clock\"");
  }
  p.time_budget = n["time_budget"].num();
  p.max_iterations = static_cast<int>(n["max_iterations"].integer());
  p.max_steps = static_cast<int>(n["max_steps"].integer());
  p.min_steps = static_cast<int>(n["min_steps"].integer());
  p.forward_bias = n["forward_bias"].num();
  p.stop_at_full_depth = n["stop_at_full_depth"].boolean();
  p.seed = n["seed"].unsigned_integer();
  return p;
}

json FootprintJson(const planner::Footprint& f) {
  return {{"length", f.length}, {"width", f.width}};
}

planner::Footprint FootprintFrom(const Node& n) {
  return {n["length"].num(), n["width"].num()};
}

json StepJson(const planner::Footstep& f) {
  return {{"side", planner::ToString(f.side)}, {"x", f.x}, {"y", f.y}, {"z", f.z}, {"yaw", f.yaw}};
}

planner::Footstep StepFrom(const Node& n) {
  planner::Footstep f;
  const std::string side = n["side"].str();
  if (side == "left") {
    f.side = planner::Side::kLeft;
  } else if (side == "right") {
    f.side = planner::Side::kRight;
  } else {
    ParseFail(n["side"].path, "expected \"left\" or \"right\"");
  }
  f.x = n["x"].num();
  f.y = n["y"].num();
  if (n.has("z")) f.z = n["z"].num();
  if (n.has("yaw")) f.yaw = n["yaw"].num();
  return f;
}

json ScenarioTree(const sim::Scenario& s, const std::string& profile) {
  json terrain = json::array();
  for (const auto& b : s.terrain) terrain.push_back(BoxJson(b));
  json dist = json::array();
  for (const auto& d : s.disturbances) dist.push_back(DisturbanceJson(d));
  json planner = PlannerJson(s.planner);
  planner["reach"] = ReachJson(s.reach);
  planner["footprint_margin"] = s.footprint_margin;
  planner["safety_ring_margin"] = s.safety_ring_margin;
  const auto& m = s.mapping;
  return {
      {"schema_version", s.schema_version},
      {"name", s.name},
      {"profile", profile},
      {"seed", s.seed},
      {"replan_enabled", s.replan_enabled},
      {"replan_limit", s.replan_limit},
      {"retarget_window", s.retarget_window},
      {"terrain", terrain},
      {"disturbances", dist},
      {"walk",
       {{"stride", s.walk.stride},
        {"step_time", s.walk.step_time},
        {"dsp_fraction", s.walk.dsp_fraction},
        {"speed_target", s.walk.speed_target},
        {"swing_apex", s.walk.swing_apex},
        {"start", Vec(s.walk.start)},
        {"stance_width", s.walk.stance_width},
        {"start_delay", s.walk.start_delay},
        {"course_end", s.walk.course_end}}},
      {"latency",
       {{"depth_acquire", s.latency.depth_acquire},
        {"mapping", s.latency.mapping},
        {"planning", s.latency.planning},
        {"comm", s.latency.comm}}},
      {"cloud", {{"sigma", s.cloud_sigma}, {"density", s.cloud_density}}},
      {"mapping",
       {{"roi",
         {{"width", m.roi.width},
          {"length", m.roi.length},
          {"z_min", m.roi.z_min},
          {"z_max", m.roi.z_max}}},
        {"voxel_downsample", m.voxel_downsample},
        {"ransac_dist_threshold", m.ransac_dist_threshold},
        {"ransac_max_planes", m.ransac_max_planes},
        {"ransac_min_inliers", m.ransac_min_inliers},
        {"ransac_iterations", m.ransac_iterations},
        {"max_tilt_deg", m.max_tilt_deg},
        {"resolution", m.resolution},
        {"min_points_per_cell", m.min_points_per_cell}}},
      {"planner", planner},
      {"footprint", FootprintJson(s.footprint)},
      {"lipm",
       {{"com_height", s.lipm.com_height},
        {"gravity", s.lipm.gravity},
        {"dt", s.lipm.dt},
        {"preview_horizon", s.lipm.preview_horizon}}},
      {"preview",
       {{"error", s.preview.error}, {"state", s.preview.state}, {"input", s.preview.input}}},
      {"stabilization",
       {{"mass", s.stabilization.mass},
        {"natural_freq_hz", s.stabilization.natural_freq_hz},
        {"damping_ratio", s.stabilization.damping_ratio},
        {"target_damping_ratio", s.stabilization.target_damping_ratio},
        {"cp_gain", s.stabilization.cp_gain}}},
      {"sim",
       {{"max_time", s.sim.max_time},
        {"settle_time", s.sim.settle_time},
        {"fall_margin", s.sim.fall_margin},
        {"fall_duration", s.sim.fall_duration},
        {"touchdown_height_tol", s.sim.touchdown_height_tol},
        {"roi_rear_offset", s.sim.roi_rear_offset},
        {"camera_height", s.sim.camera_height},
        {"camera_pitch_deg", s.sim.camera_pitch_deg}}},
  };
}

sim::Scenario ScenarioFromTree(const Node& r) {
  sim::Scenario s;
  s.schema_version = static_cast<int>(r["schema_version"].integer());
  if (s.schema_version != 1) ParseFail(r["schema_version"].path, "unsupported schema version");
  s.name = r["name"].str();
  s.seed = r["seed"].unsigned_integer();
  s.replan_enabled = r["replan_enabled"].boolean();
  s.replan_limit = r["replan_limit"].num();
  s.retarget_window = r["retarget_window"].num();
  const Node terrain = r["terrain"];
  for (std::size_t i = 0; i < terrain.size(); ++i) s.terrain.push_back(BoxFrom(terrain.at(i)));
  const Node dist = r["disturbances"];
  for (std::size_t i = 0; i < dist.size(); ++i) s.disturbances.push_back(DisturbanceFrom(dist.at(i)));

  const Node w = r["walk"];
  s.walk.stride = w["stride"].num();
  s.walk.step_time = w["step_time"].num();
  s.walk.dsp_fraction = w["dsp_fraction"].num();
  s.walk.speed_target = w["speed_target"].num();
  s.walk.swing_apex = w["swing_apex"].num();
  s.walk.start = w["start"].vec<2>();
  s.walk.stance_width = w["stance_width"].num();
  s.walk.start_delay = w["start_delay"].num();
  s.walk.course_end = w["course_end"].num();

  const Node l = r["latency"];
  s.latency = {l["depth_acquire"].num(), l["mapping"].num(), l["planning"].num(),
               l["comm"].num()};
  s.cloud_sigma = r["cloud"]["sigma"].num();
  s.cloud_density = r["cloud"]["density"].num();

  const Node m = r["mapping"];
  s.mapping.roi.width = m["roi"]["width"].num();
  s.mapping.roi.length = m["roi"]["length"].num();
  s.mapping.roi.z_min = m["roi"]["z_min"].num();
  s.mapping.roi.z_max = m["roi"]["z_max"].num();
  s.mapping.voxel_downsample = m["voxel_downsample"].num();
  s.mapping.ransac_dist_threshold = m["ransac_dist_threshold"].num();
  s.mapping.ransac_max_planes = static_cast<int>(m["ransac_max_planes"].integer());
  s.mapping.ransac_min_inliers = static_cast<int>(m["ransac_min_inliers"].integer());
  s.mapping.ransac_iterations = static_cast<int>(m["ransac_iterations"].integer());
  s.mapping.max_tilt_deg = m["max_tilt_deg"].num();
  s.mapping.resolution = m["resolution"].num();
  s.mapping.min_points_per_cell = static_cast<int>(m["min_points_per_cell"].integer());

  const Node p = r["planner"];
  s.planner = PlannerFrom(p);
  s.reach = ReachFrom(p["reach"]);
  s.footprint_margin = p["footprint_margin"].num();
  s.safety_ring_margin = p["safety_ring_margin"].num();
  s.footprint = FootprintFrom(r["footprint"]);

  const Node lp = r["lipm"];
  s.lipm = {lp["com_height"].num(), lp["gravity"].num(), lp["dt"].num(),
            lp["preview_horizon"].num()};
  const Node pv = r["preview"];
  s.preview = {pv["error"].num(), pv["state"].num(), pv["input"].num()};
  const Node st = r["stabilization"];
  s.stabilization = {st["mass"].num(), st["natural_freq_hz"].num(), st["damping_ratio"].num(),
                     st["target_damping_ratio"].num(), st["cp_gain"].num()};
  const Node sm = r["sim"];
  s.sim.max_time = sm["max_time"].num();
  s.sim.settle_time = sm["settle_time"].num();
  s.sim.fall_margin = sm["fall_margin"].num();
  s.sim.fall_duration = sm["fall_duration"].num();
  s.sim.touchdown_height_tol = sm["touchdown_height_tol"].num();
  s.sim.roi_rear_offset = sm["roi_rear_offset"].num();
  s.sim.camera_height = sm["camera_height"].num();
  s.sim.camera_pitch_deg = sm["camera_pitch_deg"].num();
  return s;
}

json ParseOverrideValue(const std::string& raw) {
  try {
    return json::parse(raw);
  } catch (const json::parse_error&) {
    return json(raw);
  }
}

}  // namespace

sim::Scenario ScenarioFromJson(std::string_view text, std::span<const std::string> overrides) {
  const json doc = Parse(text);
  if (!doc.is_object()) ParseFail("", "a scenario must be a JSON object");

  struct Override {
    std::string key;
    json value;
  };
  std::vector<Override> parsed;
  std::string profile = doc.contains("profile") && doc["profile"].is_string()
                            ? doc["profile"].get<std::string>()
                            : "default";
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw Error(ErrorCode::kParseError, "override '" + o + "' is not key=value");
    }
    parsed.push_back({o.substr(0, eq), ParseOverrideValue(o.substr(eq + 1))});
    if (parsed.back().key == "profile" && parsed.back().value.is_string()) {
      profile = parsed.back().value.get<std::string>();
    }
  }
  if (profile != "default" && profile != "narrow_path") {
    ParseFail("profile", "expected \"default\" or \"narrow_path\"");
  }

  sim::Scenario defaults;
  if (profile == "narrow_path") sim::ApplyNarrowPathProfile(defaults);
  json tree = ScenarioTree(defaults, profile);
  CheckKeys(doc, tree, "");
  Merge(tree, doc);
  tree["profile"] = profile;

  for (const auto& o : parsed) {
    std::string ptr = "/" + o.key;
    for (auto& ch : ptr) {
      if (ch == '.') ch = '/';
    }
    json::json_pointer jp;
    try {
      jp = json::json_pointer(ptr);
    } catch (const json::exception&) {
      ParseFail(o.key, "invalid override key");
    }
    bool exists = false;
    try {
      exists = tree.contains(jp);
    } catch (const json::exception&) {
      exists = false;
    }
    if (!exists) ParseFail(o.key, "unknown override key");
    tree[jp] = o.value;
  }

  try {
    return ScenarioFromTree(Node{tree, ""});
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
}

std::string ScenarioToJson(const sim::Scenario& scenario) {
  return ScenarioTree(scenario, "default").dump(2) + "\n";
}

std::string GridToJson(const terrain::SteppableGrid& grid) {
  json runs = json::array();
  const auto& cells = grid.cells();
  auto key = [](const terrain::GridCell& c) {
    const long long mm = c.steppable ? std::llround(c.height * 1000.0) : 0;
    return std::tuple<bool, long long, int>(c.steppable, mm, c.steppable ? c.plane_id : -1);
  };
  for (std::size_t i = 0; i < cells.size();) {
    const auto k = key(cells[i]);
    std::size_t j = i + 1;
    while (j < cells.size() && key(cells[j]) == k) ++j;
    runs.push_back({{"n", j - i},
                    {"steppable", std::get<0>(k)},
                    {"height_mm", std::get<1>(k)},
                    {"plane_id", std::get<2>(k)}});
    i = j;
  }
  const json j{{"resolution", grid.resolution()},
               {"origin", Vec(grid.origin())},
               {"nx", grid.nx()},
               {"ny", grid.ny()},
               {"cells", runs}};
  return j.dump() + "\n";
}

namespace {

terrain::SteppableGrid GridFrom(const Node& r) {
  const double res = r["resolution"].num();
  const int nx = static_cast<int>(r["nx"].integer());
  const int ny = static_cast<int>(r["ny"].integer());
  if (!(res > 0.0) || nx <= 0 || ny <= 0) ParseFail(r.path, "grid dimensions must be positive");
  terrain::SteppableGrid grid(res, r["origin"].vec<2>(), nx, ny);
  const Node runs = r["cells"];
  std::size_t at = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const Node run = runs.at(i);
    const auto n = static_cast<std::size_t>(run["n"].unsigned_integer());
    terrain::GridCell c;
    c.steppable = run["steppable"].boolean();
    c.height = static_cast<double>(run["height_mm"].integer()) / 1000.0;
    c.plane_id = static_cast<int>(run["plane_id"].integer());
    if (at + n > grid.cell_count()) ParseFail(run.path, "runs exceed the grid size");
    for (std::size_t k = 0; k < n; ++k) grid.cells()[at + k] = c;
    at += n;
  }
  if (at != grid.cell_count()) ParseFail(runs.path, "runs do not cover the grid");
  return grid;
}

}  // namespace

terrain::SteppableGrid GridFromJson(std::string_view text) {
  const json doc = Parse(text);
  return GridFrom(Node{doc, ""});
}

std::string FootstepToJson(const planner::Footstep& step) { return StepJson(step).dump(); }

PlanRequest PlanRequestFromJson(std::string_view text, const std::filesystem::path& base_dir) {
  const json doc = Parse(text);
  const Node r{doc, ""};
  PlanRequest req;
  if (r.has("grid")) {
    req.grid = GridFrom(r["grid"]);
  } else if (r.has("grid_file")) {
    std::filesystem::path p = r["grid_file"].str();
    if (p.is_relative()) p = base_dir / p;
    req.grid = GridFromJson(ReadFile(p));
  } else {
    ParseFail("grid", "missing key (need grid or grid_file)");
  }
  if (r.has("footprint")) req.footprint = FootprintFrom(r["footprint"]);
  req.q_init = StepFrom(r["q_init"]);
  req.q_init.footprint = req.footprint;
  if (r.has("planner")) {
    json merged = PlannerJson(req.config);
    CheckKeys(r["planner"].j, merged, "planner");
    Merge(merged, r["planner"].j);
    req.config = PlannerFrom(Node{merged, "planner"});
  }
  if (r.has("reach")) {
    json merged = ReachJson(req.reach);
    CheckKeys(r["reach"].j, merged, "reach");
    Merge(merged, r["reach"].j);
    req.reach = ReachFrom(Node{merged, "reach"});
  }
  if (r.has("ring_margin")) req.ring_margin = r["ring_margin"].num();
  return req;
}

std::string PlanResponseToJson(const planner::PlanResult& result) {
  json steps = json::array();
  for (const auto& s : result.path.steps) steps.push_back(StepJson(s));
  const json j{{"steps", steps},
               {"score", result.path.score},
               {"length", result.path.length()},
               {"short_path", result.short_path},
               {"iterations", result.iterations},
               {"tree_size", result.tree_size},
               {"elapsed_us", result.elapsed_us}};
  return j.dump(2) + "\n";
}

std::string ReportToJson(const sim::RunReport& r) {
  json events = json::array();
  for (const auto& e : r.replan_events) {
    events.push_back({{"trigger_t", e.trigger_t},
                      {"sdb_update_t", Num(e.sdb_update_t)},
                      {"latency", Num(e.latency)},
                      {"outcome", e.outcome}});
  }
  json tds = json::array();
  for (const auto& t : r.touchdowns) {
    tds.push_back({{"index", t.index}, {"t", t.t}, {"step", StepJson(t.step)},
                   {"coverage", t.coverage}});
  }
  const json j{{"scenario", r.scenario},
               {"seed", r.seed},
               {"success", r.success},
               {"failure_reason", r.failure_reason},
               {"mean_speed", r.mean_speed},
               {"speed_target_met", r.speed_target_met},
               {"duration", r.duration},
               {"perception_cycles", r.perception_cycles},
               {"revision_conflicts", r.revision_conflicts},
               {"replan_events", events},
               {"touchdowns", tds},
               {"telemetry_files", r.telemetry_files}};
  return j.dump(2) + "\n";
}

std::vector<planner::Footstep> FootstepsFromJson(std::string_view text) {
  const json doc = Parse(text);
  const Node r{doc, ""};
  std::vector<planner::Footstep> out;
  if (r.has("steps")) {
    const Node steps = r["steps"];
    for (std::size_t i = 0; i < steps.size(); ++i) out.push_back(StepFrom(steps.at(i)));
  } else if (r.has("touchdowns")) {
    const Node tds = r["touchdowns"];
    for (std::size_t i = 0; i < tds.size(); ++i) out.push_back(StepFrom(tds.at(i)["step"]));
  } else {
    ParseFail("steps", "missing key (need steps or touchdowns)");
  }
  return out;
}

namespace {

constexpr const char* kTelemetryHeader =
    "t,com_x,com_y,com_vx,com_vy,zmp_ref_x,zmp_ref_y,zmp_meas_x,zmp_meas_y,"
    "swing_x,swing_y,swing_z,sdb_revision,support_phase,czmp_x,czmp_y,w_left,w_right";

void Put(std::string& out, double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, res.ptr);
  out.push_back(',');
}

double ToDouble(std::string_view s, std::size_t line) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw Error(ErrorCode::kParseError,
                "telemetry line " + std::to_string(line) + ": bad number '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

std::string TelemetryToCsv(std::span<const sim::TelemetryRow> rows) {
  std::string out = kTelemetryHeader;
  out.push_back('\n');
  out.reserve(rows.size() * 200);
  for (const auto& r : rows) {
    for (double v : {r.t, r.com_x, r.com_y, r.com_vx, r.com_vy, r.zmp_ref_x, r.zmp_ref_y,
                     r.zmp_meas_x, r.zmp_meas_y, r.swing_x, r.swing_y, r.swing_z}) {
      Put(out, v);
    }
    out += std::to_string(r.sdb_revision);
    out.push_back(',');
    out += sim::ToString(r.support_phase);
    out.push_back(',');
    for (double v : {r.czmp_x, r.czmp_y, r.w_left}) Put(out, v);
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), r.w_right);
    out.append(buf, res.ptr);
    out.push_back('\n');
  }
  return out;
}

std::vector<sim::TelemetryRow> TelemetryFromCsv(std::string_view text) {
  std::vector<sim::TelemetryRow> rows;
  std::size_t pos = 0, line = 0;
  auto next_line = [&]() -> std::optional<std::string_view> {
    if (pos >= text.size()) return std::nullopt;
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view l = text.substr(pos, end - pos);
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
    pos = end + 1;
    ++line;
    return l;
  };
  const auto header = next_line();
  if (!header || *header != kTelemetryHeader) {
    throw Error(ErrorCode::kParseError, "telemetry header does not match the expected columns");
  }
  while (const auto l = next_line()) {
    if (l->empty()) continue;
    std::vector<std::string_view> f;
    std::size_t a = 0;
    while (true) {
      const std::size_t b = l->find(',', a);
      f.push_back(l->substr(a, b == std::string_view::npos ? std::string_view::npos : b - a));
      if (b == std::string_view::npos) break;
      a = b + 1;
    }
    if (f.size() != 18) {
      throw Error(ErrorCode::kParseError,
                  "telemetry line " + std::to_string(line) + ": expected 18 columns");
    }
    sim::TelemetryRow r;
    double* nums[] = {&r.t, &r.com_x, &r.com_y, &r.com_vx, &r.com_vy, &r.zmp_ref_x,
                      &r.zmp_ref_y, &r.zmp_meas_x, &r.zmp_meas_y, &r.swing_x, &r.swing_y,
                      &r.swing_z};
    for (int i = 0; i < 12; ++i) *nums[i] = ToDouble(f[i], line);
    r.sdb_revision = static_cast<std::uint64_t>(ToDouble(f[12], line));
    const std::string_view ph = f[13];
    if (ph == "stand") {
      r.support_phase = sim::SupportPhase::kStand;
    } else if (ph == "dsp") {
      r.support_phase = sim::SupportPhase::kDouble;
    } else if (ph == "left") {
      r.support_phase = sim::SupportPhase::kLeft;
    } else if (ph == "right") {
      r.support_phase = sim::SupportPhase::kRight;
    } else {
      throw Error(ErrorCode::kParseError,
                  "telemetry line " + std::to_string(line) + ": unknown support_phase");
    }
    r.czmp_x = ToDouble(f[14], line);
    r.czmp_y = ToDouble(f[15], line);
    r.w_left = ToDouble(f[16], line);
    r.w_right = ToDouble(f[17], line);
    rows.push_back(r);
  }
  return rows;
}

void WriteFileAtomic(const std::filesystem::path& path, std::string_view contents) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw std::runtime_error("failed writing " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace footfall::io
