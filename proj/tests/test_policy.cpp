#include "doctest.h"
#include "efx/policy.hpp"

using namespace efx;

TEST_CASE("greedy picks the centroid with the shortest obstacle-aware distance") {
  // Two unknown pockets: one close in straight line but behind a wall, one
  // farther but open.
  OccupancyGrid m(10, 20, 0.5, CellState::Free);
  m.at({5, 8}) = CellState::Unknown;
  for (int r = 0; r < 10; ++r)
    if (r != 9) m.at({r, 6}) = CellState::Occupied;
  m.at({5, 1}) = CellState::Unknown;
  const RobotPose pose{0, m.center({0, 5}), 0.0};
  const auto clustering = cluster_frontiers(detect_frontiers(m));
  REQUIRE(clustering.cluster_count() == 2);
  const auto goal = greedy_frontier_policy(m, pose, clustering);
  REQUIRE(goal.has_value());
  CHECK(m.cell_of(*goal).col < 6);
  CHECK(greedy_frontier_policy(m, pose) == goal);

  // A mask excluding the near one sends it to the far one.
  std::vector<std::uint8_t> mask(m.size(), 1);
  mask[m.index(m.cell_of(*goal))] = 0;
  const auto other = greedy_frontier_policy(m, pose, clustering, mask);
  REQUIRE(other.has_value());
  CHECK(m.cell_of(*other).col > 6);
}

TEST_CASE("greedy returns nothing without frontiers") {
  OccupancyGrid m(4, 4, 0.5, CellState::Free);
  CHECK_FALSE(greedy_frontier_policy(m, {0, m.center({1, 1}), 0.0}).has_value());
}

TEST_CASE("policy names round-trip") {
  for (PolicyKind p : {PolicyKind::Mef, PolicyKind::GreedyFrontier})
    CHECK(parse_policy(to_string(p)) == p);
  CHECK_FALSE(parse_policy("random").has_value());
}
