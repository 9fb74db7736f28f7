#include "efx/sensing.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace efx {

namespace {

// Amanatides-Woo traversal of the segment from `a` along unit `dir` for
// `length` meters. `visit(cell)` returns false to stop.
template <class Visit>
void traverse(const OccupancyGrid& g, Vec2 a, double dir_x, double dir_y, double length,
              Visit visit) {
  const double res = g.resolution();
  const double x0 = a.x / res;
  const double y0 = a.y / res;
  const double len = length / res;
  int cx = static_cast<int>(std::floor(x0));
  int cy = static_cast<int>(std::floor(y0));
  constexpr double kInf = std::numeric_limits<double>::infinity();

  const int step_x = dir_x > 0 ? 1 : -1;
  const int step_y = dir_y > 0 ? 1 : -1;
  double t_max_x = kInf;
  double t_max_y = kInf;
  double t_delta_x = kInf;
  double t_delta_y = kInf;
  if (dir_x != 0.0) {
    t_delta_x = std::abs(1.0 / dir_x);
    t_max_x = ((step_x > 0 ? cx + 1 : cx) - x0) / dir_x;
  }
  if (dir_y != 0.0) {
    t_delta_y = std::abs(1.0 / dir_y);
    t_max_y = ((step_y > 0 ? cy + 1 : cy) - y0) / dir_y;
  }

  for (;;) {
    if (!visit(GridCoord{cy, cx})) return;
    double t;
    if (t_max_x < t_max_y) {
      t = t_max_x;
      t_max_x += t_delta_x;
      cx += step_x;
    } else {
      t = t_max_y;
      t_max_y += t_delta_y;
      cy += step_y;
    }
    if (t > len) return;
  }
}

template <class Clear>
bool segment_ok(const OccupancyGrid& grid, Vec2 a, Vec2 b, Clear clear) {
  const double len = distance(a, b);
  bool ok = true;
  if (len == 0.0) {
    const GridCoord c = grid.cell_of(a);
    return grid.in_bounds(c) && clear(grid.at(c));
  }
  traverse(grid, a, (b.x - a.x) / len, (b.y - a.y) / len, len, [&](GridCoord c) {
    if (!grid.in_bounds(c) || !clear(grid.at(c))) {
      ok = false;
      return false;
    }
    return true;
  });
  return ok;
}

}  // namespace

int auto_ray_count(double sensor_range, double resolution) {
  const double n = std::ceil(3.0 * std::numbers::pi * sensor_range / resolution);
  return std::max(360, static_cast<int>(n));
}

std::size_t sense(const RobotPose& robot, const OccupancyGrid& truth, OccupancyGrid& m,
                  double sensor_range, int ray_count) {
  require_same_shape(truth, m);
  thread_local std::vector<Vec2> dirs;
  if (dirs.size() != static_cast<std::size_t>(ray_count)) {
    dirs.resize(static_cast<std::size_t>(ray_count));
    for (int k = 0; k < ray_count; ++k) {
      const double theta = 2.0 * std::numbers::pi * k / ray_count;
      dirs[static_cast<std::size_t>(k)] = {std::cos(theta), std::sin(theta)};
    }
  }
  // Same traversal as traverse(), unrolled onto raw bytes for speed.
  const auto rows = static_cast<unsigned>(truth.rows());
  const auto cols = static_cast<unsigned>(truth.cols());
  const std::uint8_t* tb = truth.bytes().data();
  std::uint8_t* mb = m.bytes().data();
  constexpr auto kFree = static_cast<std::uint8_t>(CellState::Free);
  constexpr auto kOcc = static_cast<std::uint8_t>(CellState::Occupied);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const double res = truth.resolution();
  const double x0 = robot.position.x / res;
  const double y0 = robot.position.y / res;
  const double len = sensor_range / res;
  const int cx0 = static_cast<int>(std::floor(x0));
  const int cy0 = static_cast<int>(std::floor(y0));

  std::size_t changed = 0;
  for (const Vec2& dir : dirs) {
    const int step_x = dir.x > 0 ? 1 : -1;
    const int step_y = dir.y > 0 ? 1 : -1;
    double t_max_x = kInf, t_max_y = kInf, t_delta_x = kInf, t_delta_y = kInf;
    if (dir.x != 0.0) {
      t_delta_x = std::abs(1.0 / dir.x);
      t_max_x = ((step_x > 0 ? cx0 + 1 : cx0) - x0) / dir.x;
    }
    if (dir.y != 0.0) {
      t_delta_y = std::abs(1.0 / dir.y);
      t_max_y = ((step_y > 0 ? cy0 + 1 : cy0) - y0) / dir.y;
    }
    int cx = cx0;
    int cy = cy0;
    for (;;) {
      if (static_cast<unsigned>(cx) >= cols || static_cast<unsigned>(cy) >= rows) break;
      const std::size_t idx = static_cast<std::size_t>(cy) * cols + static_cast<std::size_t>(cx);
      const std::uint8_t seen = tb[idx] == kOcc ? kOcc : kFree;
      if (seen > mb[idx]) {
        mb[idx] = seen;
        ++changed;
      }
      if (seen == kOcc) break;
      double t;
      if (t_max_x < t_max_y) {
        t = t_max_x;
        t_max_x += t_delta_x;
        cx += step_x;
      } else {
        t = t_max_y;
        t_max_y += t_delta_y;
        cy += step_y;
      }
      if (t > len) break;
    }
  }
  // Body footprint: the robot's own cell and its 8 neighbors are always
  // resolved, including wall cells that touch the free space only diagonally.
  for (int dr = -1; dr <= 1; ++dr) {
    for (int dc = -1; dc <= 1; ++dc) {
      const int cx = cx0 + dc;
      const int cy = cy0 + dr;
      if (static_cast<unsigned>(cx) >= cols || static_cast<unsigned>(cy) >= rows) continue;
      const std::size_t idx = static_cast<std::size_t>(cy) * cols + static_cast<std::size_t>(cx);
      const std::uint8_t seen = tb[idx] == kOcc ? kOcc : kFree;
      if (seen > mb[idx]) {
        mb[idx] = seen;
        ++changed;
      }
    }
  }
  return changed;
}

bool segment_clear(const OccupancyGrid& grid, Vec2 a, Vec2 b) {
  return segment_ok(grid, a, b, [](CellState s) { return s != CellState::Occupied; });
}

bool segment_free(const OccupancyGrid& grid, Vec2 a, Vec2 b) {
  return segment_ok(grid, a, b, [](CellState s) { return s == CellState::Free; });
}

}  // namespace efx
