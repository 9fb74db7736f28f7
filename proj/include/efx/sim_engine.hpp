#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "efx/comm_graph.hpp"
#include "efx/entropy_field.hpp"
#include "efx/goal_assignment.hpp"
#include "efx/grid_map.hpp"
#include "efx/policy.hpp"

namespace efx {

/// Which maps decide success: each robot's own map, or an evaluation-only
/// join of all maps that no robot can read. None never ends a run on
/// coverage (scripted scenarios).
enum class SuccessMode : std::uint8_t { Own, Merged, None };

const char* to_string(SuccessMode m);

struct ScenarioConfig {
  std::filesystem::path world;  // map file
  std::vector<Vec2> starts;
  int n_robots = 0;
  double r_comm = 4.0;          // +inf allowed
  double v_max = 0.5;           // m/s
  double dt = 0.1;              // s
  double coverage_threshold = 0.99;
  double stuck_timeout = 120.0; // s
  double max_sim_time = 900.0;  // s
  std::uint64_t seed = 1;
  FieldParams field;            // field.sensor_range is d_s
  double k_ref = 0.1;
  double arrival_tolerance = 0.0; // <= 0 means two grid cells
  int ray_count = 0;              // <= 0 means auto_ray_count
  PolicyKind policy = PolicyKind::Mef;
  bool share_positions = true;    // low-speed position layer
  SuccessMode success_mode = SuccessMode::Own;

  double sensor_range() const { return field.sensor_range; }

  /// Fills every "auto" value from the world grid so the config is fully
  /// explicit.
  void resolve(const OccupancyGrid& truth);

  /// Throws std::invalid_argument naming the offending field.
  void validate(const OccupancyGrid& truth) const;
};

struct GoalEvent {
  std::int64_t tick = 0;
  double time = 0.0;
  int robot = 0;
  AssignTrigger trigger = AssignTrigger::Bootstrap;
  GridCoord cell;
  Vec2 goal;
  Vec2 pos_pre;
  double t_ref = 0.0;

  friend bool operator==(const GoalEvent&, const GoalEvent&) = default;
};

/// A link came up while at least one endpoint had no frontier clusters at its
/// latest planning cycle, i.e. the robot ring term was steering it.
struct RendezvousEvent {
  std::int64_t tick = 0;
  int i = 0;
  int j = 0;

  friend bool operator==(const RendezvousEvent&, const RendezvousEvent&) = default;
};

struct CoverageSample {
  std::int64_t tick = 0;
  double best_own = 0.0;
  double merged = 0.0;

  friend bool operator==(const CoverageSample&, const CoverageSample&) = default;
};

enum class Termination : std::uint8_t { Running, Success, Stuck, MaxTime };

const char* to_string(Termination t);

struct RunRecord {
  std::uint64_t seed = 0;
  bool success = false;
  double time = 0.0;          // T: simulated seconds at termination
  std::int64_t ticks = 0;
  Termination termination = Termination::Running;
  double final_coverage = 0.0;  // under the configured success mode
  std::int64_t planning_cycles = 0;
  std::vector<EdgeEvent> edge_events;
  std::vector<GoalEvent> goal_events;
  std::vector<RendezvousEvent> rendezvous_events;
  std::vector<CoverageSample> coverage;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

/// Deterministic tick loop: sense, communicate and merge, plan and assign,
/// move. Exposed step-wise so scripted scenarios can drive it directly.
class Simulation {
 public:
  /// Resolves and validates `cfg` against `truth`; throws on invalid input.
  Simulation(ScenarioConfig cfg, OccupancyGrid truth);

  void step();
  bool finished() const { return record_.termination != Termination::Running; }
  RunRecord run_to_end();

  std::int64_t tick() const { return tick_; }
  double time() const { return static_cast<double>(tick_) * cfg_.dt; }
  const ScenarioConfig& config() const { return cfg_; }
  const OccupancyGrid& truth() const { return truth_; }
  const RunRecord& record() const { return record_; }
  std::span<const RobotPose> poses() const { return poses_; }
  std::span<const OccupancyGrid> maps() const { return maps_; }
  const GoalState& goal(int robot) const { return goals_[static_cast<std::size_t>(robot)]; }
  const CommGraph& graph() const { return graph_; }
  const NoiseState& noise() const { return noise_; }
  const std::vector<Vec2>& path(int robot) const { return paths_[static_cast<std::size_t>(robot)]; }
  std::span<const std::uint8_t> coverage_mask() const { return mask_; }

  /// Replaces a robot's map (scripted scenarios). Must match the world shape.
  void set_map(int robot, OccupancyGrid m);

  /// Field the robot would compute right now from its own map.
  EntropyField field_for(int robot) const;

  /// Robots whose positions robot `robot` can read.
  std::vector<RobotPose> visible_poses(int robot) const;

 private:
  void sense_all();
  void communicate();
  bool check_success();
  void plan(int robot, double now);
  void move(int robot);
  void check_stuck_and_time();
  void finish(Termination t);
  bool path_still_free(int robot) const;
  void replan_to_current_goal(int robot);

  ScenarioConfig cfg_;
  OccupancyGrid truth_;
  std::vector<std::uint8_t> mask_;
  std::vector<OccupancyGrid> maps_;
  std::vector<RobotPose> poses_;
  std::vector<GoalState> goals_;
  std::vector<std::vector<Vec2>> paths_;
  std::vector<std::optional<Vec2>> last_sensed_;
  std::vector<int> last_cluster_count_;
  CommGraph graph_;
  NoiseState noise_;
  std::mt19937_64 rng_;
  OccupancyGrid merged_scratch_;
  std::vector<Vec2> anchors_;
  double anchor_time_ = 0.0;
  std::int64_t tick_ = 0;
  RunRecord record_;
};

/// Loads the world file and runs to termination.
RunRecord run(const ScenarioConfig& scenario);

/// Runs on an already loaded world.
RunRecord run(const ScenarioConfig& scenario, const OccupancyGrid& truth);

}  // namespace efx
