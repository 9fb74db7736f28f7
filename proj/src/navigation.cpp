#include "efx/navigation.hpp"

#include <algorithm>
#include <cmath>

#include "bucket_dijkstra.hpp"
#include "efx/sensing.hpp"

namespace efx {

std::vector<std::uint8_t> FreeSpaceSearch::reachable_mask() const {
  std::vector<std::uint8_t> mask(dist.size(), 0);
  for (std::size_t i = 0; i < dist.size(); ++i) mask[i] = reachable(i);
  return mask;
}

FreeSpaceSearch free_space_search(const OccupancyGrid& m, GridCoord from) {
  FreeSpaceSearch s;
  s.source = from;
  if (!m.in_bounds(from) || m.at(from) != CellState::Free) {
    s.dist.assign(m.size(), std::numeric_limits<double>::infinity());
    s.parent.assign(m.size(), -1);
    return s;
  }
  const auto cells = m.bytes();
  constexpr auto kFree = static_cast<std::uint8_t>(CellState::Free);
  const int cols = m.cols();
  detail::bucket_dijkstra(
      m, m.index(from), s.dist, &s.parent, [&](std::size_t n) { return cells[n] == kFree; },
      [&](int r, int c, int dr, int dc) {
        return cells[static_cast<std::size_t>(r + dr) * static_cast<std::size_t>(cols) +
                     static_cast<std::size_t>(c)] == kFree &&
               cells[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) +
                     static_cast<std::size_t>(c + dc)] == kFree;
      });
  return s;
}

std::optional<std::vector<Vec2>> extract_path(const OccupancyGrid& m, const FreeSpaceSearch& s,
                                              Vec2 from, Vec2 to) {
  if (from == to) return std::vector<Vec2>{from};
  const GridCoord goal = m.cell_of(to);
  if (!m.in_bounds(goal)) return std::nullopt;
  const std::size_t goal_idx = m.index(goal);
  if (!s.reachable(goal_idx)) return std::nullopt;

  std::vector<GridCoord> cells;
  for (std::int32_t cur = static_cast<std::int32_t>(goal_idx); cur >= 0;
       cur = s.parent[static_cast<std::size_t>(cur)])
    cells.push_back(m.coord(static_cast<std::size_t>(cur)));
  std::reverse(cells.begin(), cells.end());

  std::vector<Vec2> path{from};
  // Skip the start cell's center when heading straight to the next cell
  // stays on Free cells; avoids a back-step when the robot is mid-segment.
  std::size_t first = 0;
  if (cells.size() > 1 && segment_free(m, from, m.center(cells[1]))) first = 1;
  for (std::size_t k = first; k < cells.size(); ++k) {
    const Vec2 c = m.center(cells[k]);
    if (!(c == path.back())) path.push_back(c);
  }
  return path;
}

std::optional<std::vector<Vec2>> plan_path(const OccupancyGrid& m, Vec2 from, Vec2 to) {
  const auto search = free_space_search(m, m.cell_of(from));
  if (!m.in_bounds(search.source) || m.at(search.source) != CellState::Free) return std::nullopt;
  return extract_path(m, search, from, to);
}

double path_length(const std::vector<Vec2>& path) {
  double len = 0.0;
  for (std::size_t k = 1; k < path.size(); ++k) len += distance(path[k - 1], path[k]);
  return len;
}

RobotPose step_motion(const RobotPose& robot, std::vector<Vec2>& path, double v_max, double dt) {
  RobotPose out = robot;
  if (path.size() < 2) return out;
  double budget = v_max * dt;
  Vec2 pos = path.front();
  std::size_t next = 1;
  while (next < path.size() && budget > 0.0) {
    const Vec2 target = path[next];
    const double seg = distance(pos, target);
    if (seg > 0.0) out.heading = std::atan2(target.y - pos.y, target.x - pos.x);
    if (seg <= budget) {
      budget -= seg;
      pos = target;
      ++next;
    } else {
      const double f = budget / seg;
      pos = {pos.x + (target.x - pos.x) * f, pos.y + (target.y - pos.y) * f};
      budget = 0.0;
    }
  }
  path.erase(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(next - 1));
  path.front() = pos;
  out.position = pos;
  return out;
}

}  // namespace efx
