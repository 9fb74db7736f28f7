#include "efx/policy.hpp"

#include <cmath>

#include "efx/entropy_field.hpp"

namespace efx {

const char* to_string(PolicyKind p) { return p == PolicyKind::Mef ? "mef" : "greedy"; }

std::optional<PolicyKind> parse_policy(std::string_view s) {
  if (s == "mef") return PolicyKind::Mef;
  if (s == "greedy") return PolicyKind::GreedyFrontier;
  return std::nullopt;
}

std::optional<Vec2> greedy_frontier_policy(const OccupancyGrid& m, const RobotPose& pose,
                                           const FrontierClustering& clustering,
                                           std::span<const std::uint8_t> candidates) {
  if (clustering.clusters.empty()) return std::nullopt;
  const GridCoord start = m.cell_of(pose.position);
  if (!m.in_bounds(start) || m.at(start) == CellState::Occupied) return std::nullopt;
  const auto from_robot = wavefront_distance(m, start);

  std::optional<GridCoord> best;
  double best_d = 0.0;
  for (const FrontierCluster& q : clustering.clusters) {
    const std::size_t idx = m.index(q.centroid);
    if (!candidates.empty() && candidates[idx] == 0) continue;
    const double d = from_robot.dist[idx];
    if (!std::isfinite(d)) continue;
    if (!best || d < best_d) {
      best = q.centroid;
      best_d = d;
    }
  }
  if (!best) return std::nullopt;
  return m.center(*best);
}

std::optional<Vec2> greedy_frontier_policy(const OccupancyGrid& m, const RobotPose& pose) {
  const auto frontiers = detect_frontiers(m);
  return greedy_frontier_policy(m, pose, cluster_frontiers(frontiers));
}

}  // namespace efx
