#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "efx/comm_graph.hpp"
#include "efx/grid_map.hpp"

namespace efx {

enum class PolicyKind : std::uint8_t { Mef, GreedyFrontier };

const char* to_string(PolicyKind p);
std::optional<PolicyKind> parse_policy(std::string_view s);

/// Nearest-centroid baseline: the centroid with the smallest wavefront
/// distance from the robot. `candidates` (optional) restricts the choice to
/// centroids whose mask byte is nonzero. nullopt when no centroid qualifies.
std::optional<Vec2> greedy_frontier_policy(const OccupancyGrid& m, const RobotPose& pose,
                                           const FrontierClustering& clustering,
                                           std::span<const std::uint8_t> candidates = {});

/// Convenience overload that detects and clusters frontiers itself.
std::optional<Vec2> greedy_frontier_policy(const OccupancyGrid& m, const RobotPose& pose);

}  // namespace efx
