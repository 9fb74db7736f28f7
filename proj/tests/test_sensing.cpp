#include <cmath>

#include "doctest.h"
#include "efx/sensing.hpp"

using namespace efx;

namespace {

OccupancyGrid open_room(int rows, int cols, double res) {
  OccupancyGrid g(rows, cols, res, CellState::Free);
  for (int r = 0; r < rows; ++r) {
    g.at({r, 0}) = CellState::Occupied;
    g.at({r, cols - 1}) = CellState::Occupied;
  }
  for (int c = 0; c < cols; ++c) {
    g.at({0, c}) = CellState::Occupied;
    g.at({rows - 1, c}) = CellState::Occupied;
  }
  return g;
}

}  // namespace

TEST_CASE("auto ray count") {
  CHECK(auto_ray_count(7.0, 0.05) == 1320);
  CHECK(auto_ray_count(0.5, 0.05) == 360);
}

TEST_CASE("open field: near cells seen, far cells not") {
  const auto truth = open_room(120, 120, 0.05);
  OccupancyGrid m(120, 120, 0.05);
  const RobotPose robot{0, {3.0, 3.0}, 0.0};
  const double range = 2.0;
  sense(robot, truth, m, range, auto_ray_count(range, 0.05));
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      const double d = distance(m.center({r, c}), robot.position);
      if (d <= range - 0.05) CHECK(m.at({r, c}) == CellState::Free);
      if (d > range + 0.05) CHECK(m.at({r, c}) == CellState::Unknown);
    }
  }
}

TEST_CASE("walls are observed and shadow what lies behind them") {
  auto truth = open_room(80, 80, 0.05);
  // A wall 10 cells thick at columns 40..49 across rows 10..69.
  for (int r = 10; r < 70; ++r)
    for (int c = 40; c < 50; ++c) truth.at({r, c}) = CellState::Occupied;
  OccupancyGrid m(80, 80, 0.05);
  const RobotPose robot{0, {1.0, 2.0}, 0.0};  // column 20, row 40
  sense(robot, truth, m, 3.0, auto_ray_count(3.0, 0.05));
  CHECK(m.at({40, 40}) == CellState::Occupied);
  CHECK(m.at({40, 41}) == CellState::Unknown);
  CHECK(m.at({40, 55}) == CellState::Unknown);
  // Observations never contradict ground truth.
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i] != CellState::Unknown) CHECK(m[i] == truth[i]);
}

TEST_CASE("the robot's footprint is always observed") {
  auto truth = open_room(10, 10, 0.05);
  truth.at({4, 6}) = CellState::Occupied;
  truth.at({6, 6}) = CellState::Occupied;
  OccupancyGrid m(10, 10, 0.05);
  // A degenerate sensor still reports the 3x3 block around the robot.
  sense({0, m.center({5, 5}), 0.0}, truth, m, 1e-9, 1);
  for (int dr = -1; dr <= 1; ++dr)
    for (int dc = -1; dc <= 1; ++dc) CHECK(m.at({5 + dr, 5 + dc}) == truth.at({5 + dr, 5 + dc}));
}

TEST_CASE("sensing is monotone and reports changes") {
  const auto truth = open_room(40, 40, 0.05);
  OccupancyGrid m(40, 40, 0.05);
  const RobotPose robot{0, {1.0, 1.0}, 0.0};
  const std::size_t first = sense(robot, truth, m, 0.5, 360);
  CHECK(first > 0);
  const auto snapshot = m;
  CHECK(sense(robot, truth, m, 0.5, 360) == 0);
  CHECK(m == snapshot);
}

TEST_CASE("segment predicates") {
  OccupancyGrid g(5, 5, 1.0, CellState::Free);
  g.at({2, 2}) = CellState::Occupied;
  g.at({0, 4}) = CellState::Unknown;
  CHECK(segment_clear(g, {0.5, 0.5}, {4.5, 0.5}));
  CHECK_FALSE(segment_free(g, {0.5, 0.5}, {4.5, 0.5}));
  CHECK_FALSE(segment_clear(g, {0.5, 2.5}, {4.5, 2.5}));
  CHECK_FALSE(segment_clear(g, {0.5, 0.5}, {5.5, 0.5}));
}
