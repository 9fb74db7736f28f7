#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "efx/comm_graph.hpp"
#include "efx/grid_map.hpp"

namespace efx {

/// Single-source shortest paths over Free cells of a map, 8-connected with
/// no corner cutting (a diagonal step needs both side cells Free).
struct FreeSpaceSearch {
  GridCoord source;
  std::vector<double> dist;     // +inf where unreachable
  std::vector<std::int32_t> parent;

  bool reachable(std::size_t idx) const { return dist[idx] < 1e300; }
  /// 1 for reachable cells, 0 elsewhere.
  std::vector<std::uint8_t> reachable_mask() const;
};

/// Empty search (nothing reachable) if `from` is not a Free cell.
FreeSpaceSearch free_space_search(const OccupancyGrid& m, GridCoord from);

/// Waypoints from `from` to the center of `to`'s cell, or nullopt if
/// unreachable. The first waypoint is `from` itself.
std::optional<std::vector<Vec2>> extract_path(const OccupancyGrid& m, const FreeSpaceSearch& s,
                                              Vec2 from, Vec2 to);

/// Shortest Free-cell path between two world points.
std::optional<std::vector<Vec2>> plan_path(const OccupancyGrid& m, Vec2 from, Vec2 to);

double path_length(const std::vector<Vec2>& path);

/// Advances the robot along `path` (path.front() is its position) by exactly
/// v_max * dt meters or to the path end. Consumed waypoints are dropped so
/// that path.front() is the new position; heading follows the last segment
/// traversed.
RobotPose step_motion(const RobotPose& robot, std::vector<Vec2>& path, double v_max, double dt);

}  // namespace efx
