#include "efx/sim_engine.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "efx/map_io.hpp"
#include "efx/navigation.hpp"
#include "efx/sensing.hpp"

namespace efx {

const char* to_string(SuccessMode m) {
  switch (m) {
    case SuccessMode::Own:
      return "own";
    case SuccessMode::Merged:
      return "merged";
    case SuccessMode::None:
      return "none";
  }
  return "unknown";
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::Running:
      return "running";
    case Termination::Success:
      return "success";
    case Termination::Stuck:
      return "stuck";
    case Termination::MaxTime:
      return "max_time";
  }
  return "unknown";
}

void ScenarioConfig::resolve(const OccupancyGrid& truth) {
  if (field.epsilon_d <= 0.0) field.epsilon_d = truth.resolution();
  if (arrival_tolerance <= 0.0) arrival_tolerance = 2.0 * truth.resolution();
  if (ray_count <= 0) ray_count = auto_ray_count(field.sensor_range, truth.resolution());
  if (n_robots <= 0) n_robots = static_cast<int>(starts.size());
  // Extra starts let one scenario serve every robot count of a sweep.
  if (starts.size() > static_cast<std::size_t>(n_robots))
    starts.resize(static_cast<std::size_t>(n_robots));
}

void ScenarioConfig::validate(const OccupancyGrid& truth) const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };
  if (n_robots <= 0) fail("n_robots: must be positive");
  if (starts.size() != static_cast<std::size_t>(n_robots))
    fail("starts: expected " + std::to_string(n_robots) + " start positions, got " +
         std::to_string(starts.size()));
  std::set<GridCoord> used;
  for (std::size_t k = 0; k < starts.size(); ++k) {
    const GridCoord c = truth.cell_of(starts[k]);
    const std::string which = "starts[" + std::to_string(k) + "]";
    if (!truth.in_bounds(c)) fail(which + ": outside the world");
    if (truth.at(c) != CellState::Free) fail(which + ": not on a Free cell");
    if (!used.insert(c).second) fail(which + ": shares a cell with another start");
  }
  if (std::isnan(r_comm) || r_comm < 0.0) fail("r_comm: must be >= 0 or inf");
  if (!(v_max > 0.0) || !std::isfinite(v_max)) fail("v_max: must be positive");
  if (!(dt > 0.0) || !std::isfinite(dt)) fail("dt: must be positive");
  if (!(coverage_threshold > 0.0 && coverage_threshold <= 1.0))
    fail("coverage_threshold: must be in (0, 1]");
  if (!(stuck_timeout > 0.0)) fail("stuck_timeout: must be positive");
  if (!(max_sim_time > 0.0) || !std::isfinite(max_sim_time))
    fail("max_sim_time: must be positive and finite");
  if (!(k_ref > 0.0 && k_ref < 1.0)) fail("k_ref: must be in (0, 1)");
  if (!(arrival_tolerance > 0.0)) fail("arrival_tolerance: must be positive");
  if (ray_count <= 0) fail("ray_count: must be positive");
  field.validate();
}

Simulation::Simulation(ScenarioConfig cfg, OccupancyGrid truth)
    : cfg_(std::move(cfg)), truth_(std::move(truth)), graph_(1, 0.0) {
  cfg_.resolve(truth_);
  cfg_.validate(truth_);

  const auto n = static_cast<std::size_t>(cfg_.n_robots);
  std::vector<GridCoord> seeds;
  for (const Vec2& s : cfg_.starts) seeds.push_back(truth_.cell_of(s));
  mask_ = reachable_free_mask(truth_, seeds);

  maps_.assign(n, OccupancyGrid(truth_.rows(), truth_.cols(), truth_.resolution()));
  merged_scratch_ = maps_.front();
  for (std::size_t i = 0; i < n; ++i) {
    poses_.push_back({static_cast<int>(i), cfg_.starts[i], 0.0});
    GoalState gs;
    gs.k_ref = cfg_.k_ref;
    gs.v_max = cfg_.v_max;
    gs.arrival_tolerance = cfg_.arrival_tolerance;
    gs.pos_pre = cfg_.starts[i];
    goals_.push_back(gs);
    paths_.push_back({cfg_.starts[i]});
  }
  last_sensed_.assign(n, std::nullopt);
  last_cluster_count_.assign(n, -1);
  graph_ = CommGraph(cfg_.n_robots, cfg_.r_comm);
  noise_ = make_noise_state(cfg_.n_robots);
  rng_.seed(cfg_.seed);
  anchors_ = cfg_.starts;
  record_.seed = cfg_.seed;
}

void Simulation::set_map(int robot, OccupancyGrid m) {
  require_same_shape(m, truth_);
  maps_[static_cast<std::size_t>(robot)] = std::move(m);
}

std::vector<RobotPose> Simulation::visible_poses(int robot) const {
  if (cfg_.share_positions) return poses_;
  return {poses_[static_cast<std::size_t>(robot)]};
}

EntropyField Simulation::field_for(int robot) const {
  const auto& m = maps_[static_cast<std::size_t>(robot)];
  const auto clustering = cluster_frontiers(detect_frontiers(m));
  const auto visible = visible_poses(robot);
  return total_field(robot, m, clustering, visible, cfg_.n_robots, cfg_.field, noise_.values);
}

void Simulation::sense_all() {
  for (std::size_t i = 0; i < poses_.size(); ++i) {
    // Sensing again from an unchanged pose adds nothing under the join.
    if (last_sensed_[i] && *last_sensed_[i] == poses_[i].position) continue;
    sense(poses_[i], truth_, maps_[i], cfg_.sensor_range(), cfg_.ray_count);
    last_sensed_[i] = poses_[i].position;
  }
}

void Simulation::communicate() {
  const auto events = graph_.update_edges(poses_, tick_);
  for (const EdgeEvent& e : events) {
    record_.edge_events.push_back(e);
    if (e.type == EdgeEventType::Up &&
        (last_cluster_count_[static_cast<std::size_t>(e.i)] == 0 ||
         last_cluster_count_[static_cast<std::size_t>(e.j)] == 0))
      record_.rendezvous_events.push_back({tick_, e.i, e.j});
  }
  merge_to_fixpoint(graph_, maps_);
  for (std::size_t i = 0; i < paths_.size(); ++i)
    if (!path_still_free(static_cast<int>(i))) replan_to_current_goal(static_cast<int>(i));
}

bool Simulation::check_success() {
  double best_own = 0.0;
  for (const auto& m : maps_) best_own = std::max(best_own, coverage_fraction(m, mask_));
  merged_scratch_ = maps_.front();
  for (std::size_t i = 1; i < maps_.size(); ++i) merge_into(merged_scratch_, maps_[i]);
  const double merged = coverage_fraction(merged_scratch_, mask_);
  record_.coverage.push_back({tick_, best_own, merged});

  const double cov = cfg_.success_mode == SuccessMode::Merged ? merged : best_own;
  record_.final_coverage = cov;
  return cfg_.success_mode != SuccessMode::None && cov >= cfg_.coverage_threshold;
}

bool Simulation::path_still_free(int robot) const {
  const auto& m = maps_[static_cast<std::size_t>(robot)];
  const auto& path = paths_[static_cast<std::size_t>(robot)];
  for (std::size_t k = 1; k < path.size(); ++k)
    if (m.at(m.cell_of(path[k])) != CellState::Free) return false;
  return true;
}

void Simulation::replan_to_current_goal(int robot) {
  const auto i = static_cast<std::size_t>(robot);
  const Vec2 pos = poses_[i].position;
  paths_[i] = {pos};
  if (!goals_[i].g_cur) return;
  if (auto p = plan_path(maps_[i], pos, *goals_[i].g_cur)) paths_[i] = std::move(*p);
}

void Simulation::plan(int robot, double now) {
  const auto i = static_cast<std::size_t>(robot);
  const Vec2 pos = poses_[i].position;
  GoalState& gs = goals_[i];
  if (!assignment_due(gs, pos, now)) return;

  const OccupancyGrid& m = maps_[i];
  ++record_.planning_cycles;
  const auto search = free_space_search(m, m.cell_of(pos));
  const auto candidates = search.reachable_mask();
  const auto clustering = cluster_frontiers(detect_frontiers(m));
  last_cluster_count_[i] = static_cast<int>(clustering.cluster_count());

  std::optional<Vec2> g_new;
  if (cfg_.policy == PolicyKind::Mef) {
    const auto visible = visible_poses(robot);
    if (const auto cell = select_mef_goal_cell(m, clustering, visible, cfg_.n_robots, cfg_.field,
                                               noise_.values, candidates))
      g_new = m.center(*cell);
  } else {
    g_new = greedy_frontier_policy(m, poses_[i], clustering, candidates);
  }

  if (!g_new) {
    // Locally done: hold and keep re-evaluating every tick.
    paths_[i] = {pos};
    return;
  }

  const std::optional<Vec2> previous = gs.g_cur;
  const auto res = maybe_assign(gs, pos, now, *g_new);
  gs = res.state;
  if (!res.trigger) return;
  record_.goal_events.push_back(
      {tick_, now, robot, *res.trigger, m.cell_of(*g_new), *g_new, pos, gs.t_ref});

  const bool same_goal = previous && *previous == *g_new && paths_[i].size() > 1;
  if (same_goal) return;
  if (auto p = extract_path(m, search, pos, *g_new))
    paths_[i] = std::move(*p);
  else
    paths_[i] = {pos};
}

void Simulation::move(int robot) {
  const auto i = static_cast<std::size_t>(robot);
  auto& path = paths_[i];
  if (path.size() < 2) return;
  const std::vector<Vec2> before = path;
  const RobotPose next = step_motion(poses_[i], path, cfg_.v_max, cfg_.dt);

  // Every traversed piece must stay off Occupied ground truth.
  const std::size_t consumed = before.size() - path.size();
  Vec2 prev = before.front();
  bool clear = true;
  for (std::size_t k = 1; k <= consumed && clear; ++k) {
    clear = segment_clear(truth_, prev, before[k]);
    prev = before[k];
  }
  if (clear) clear = segment_clear(truth_, prev, next.position);
  if (!clear) {
    path = {poses_[i].position};
    return;
  }
  poses_[i] = next;
}

void Simulation::check_stuck_and_time() {
  const double now = time();
  bool moved = false;
  for (std::size_t i = 0; i < poses_.size(); ++i)
    if (distance(poses_[i].position, anchors_[i]) >= truth_.resolution()) moved = true;
  if (moved) {
    for (std::size_t i = 0; i < poses_.size(); ++i) anchors_[i] = poses_[i].position;
    anchor_time_ = now;
  }
  if (now - anchor_time_ >= cfg_.stuck_timeout) {
    finish(Termination::Stuck);
    return;
  }
  if (now >= cfg_.max_sim_time) finish(Termination::MaxTime);
}

void Simulation::finish(Termination t) {
  record_.termination = t;
  record_.success = t == Termination::Success;
  record_.ticks = tick_;
  record_.time = time();
}

void Simulation::step() {
  if (finished()) return;
  sense_all();
  communicate();
  if (check_success()) {
    ++tick_;
    finish(Termination::Success);
    return;
  }
  advance_noise(noise_, rng_, cfg_.field);
  const double now = time();
  for (int r = 0; r < cfg_.n_robots; ++r) plan(r, now);
  for (int r = 0; r < cfg_.n_robots; ++r) move(r);
  ++tick_;
  check_stuck_and_time();
}

RunRecord Simulation::run_to_end() {
  while (!finished()) step();
  return record_;
}

RunRecord run(const ScenarioConfig& scenario, const OccupancyGrid& truth) {
  Simulation sim(scenario, truth);
  return sim.run_to_end();
}

RunRecord run(const ScenarioConfig& scenario) { return run(scenario, load_map(scenario.world)); }

}  // namespace efx
