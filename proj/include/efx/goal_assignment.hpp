#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "efx/entropy_field.hpp"
#include "efx/grid_map.hpp"

namespace efx {

enum class AssignTrigger : std::uint8_t { Bootstrap, Arrival, Timeout };

const char* to_string(AssignTrigger t);

struct GoalState {
  std::optional<Vec2> g_cur;
  std::optional<Vec2> g_new;
  Vec2 pos_pre;
  double assigned_at = 0.0;
  double t_ref = 0.0;
  double k_ref = 0.1;
  double v_max = 0.5;
  double arrival_tolerance = 0.1;
};

/// k_ref * |pos_pre - goal| / v_max.
double reference_duration(double k_ref, Vec2 pos_pre, Vec2 goal, double v_max);

/// Row-major first Free cell with the smallest finite h_total. `candidates`,
/// when non-empty, further restricts the search to cells with a nonzero mask
/// byte. nullopt when no cell qualifies.
std::optional<GridCoord> select_goal_cell(const EntropyField& field, const OccupancyGrid& m,
                                          std::span<const std::uint8_t> candidates = {});

/// Center of the cell chosen by select_goal_cell.
std::optional<Vec2> select_new_goal(const EntropyField& field, const OccupancyGrid& m,
                                    std::span<const std::uint8_t> candidates = {});

/// Same cell as select_goal_cell(total_field(...), m, candidates) without
/// materializing h_f: each centroid's wavefront stops once no remaining cell
/// can beat the best value found so far. Sum aggregation falls back to the
/// full field.
std::optional<GridCoord> select_mef_goal_cell(const OccupancyGrid& m,
                                              const FrontierClustering& clustering,
                                              std::span<const RobotPose> visible_poses,
                                              int n_robots, const FieldParams& params,
                                              std::span<const double> noise,
                                              std::span<const std::uint8_t> candidates = {});

/// Which reassignment condition holds at (pos_cur, now), if any. Bootstrap
/// when no goal is held, then arrival, then timeout.
std::optional<AssignTrigger> assignment_due(const GoalState& gs, Vec2 pos_cur, double now);

struct AssignResult {
  GoalState state;
  std::optional<AssignTrigger> trigger;  // set iff the goal was (re)assigned
};

/// Duration-adaptive assignment: g_cur <- g_new only when a condition holds.
AssignResult maybe_assign(const GoalState& gs, Vec2 pos_cur, double now, Vec2 g_new);

}  // namespace efx
