#pragma once

#include "efx/comm_graph.hpp"
#include "efx/grid_map.hpp"

namespace efx {

/// Rays needed so that adjacent rays are at most 2/3 of a cell apart at full
/// range (never fewer than 360).
int auto_ray_count(double sensor_range, double resolution);

/// Casts `ray_count` evenly spaced rays of length `sensor_range` from the robot
/// against ground truth. Traversed cells are observed Free, the first
/// Occupied hit is observed Occupied, and observations are joined into `m`.
/// The robot's cell and its 8 neighbors are observed as well.
/// Returns the number of cells of `m` that changed.
std::size_t sense(const RobotPose& robot, const OccupancyGrid& truth, OccupancyGrid& m,
                  double sensor_range, int ray_count);

/// True when the segment a-b only crosses non-Occupied cells of `grid`
/// (out-of-bounds counts as blocked).
bool segment_clear(const OccupancyGrid& grid, Vec2 a, Vec2 b);

/// Same, but only Free cells count as clear.
bool segment_free(const OccupancyGrid& grid, Vec2 a, Vec2 b);

}  // namespace efx
