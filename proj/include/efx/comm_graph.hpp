#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "efx/grid_map.hpp"

namespace efx {

struct RobotPose {
  int robot_id = 0;  // zero-based
  Vec2 position;
  double heading = 0.0;
};

enum class EdgeEventType : std::uint8_t { Up, Down };

struct EdgeEvent {
  std::int64_t tick = 0;
  EdgeEventType type = EdgeEventType::Up;
  int i = 0;  // i < j
  int j = 0;

  friend bool operator==(const EdgeEvent&, const EdgeEvent&) = default;
};

const char* to_string(EdgeEventType t);

/// High-speed link layer over robots 0..n-1. An edge exists between i and j
/// exactly when their distance is strictly below r_comm (infinity allowed).
class CommGraph {
 public:
  CommGraph(int robot_count, double r_comm);

  int robot_count() const { return n_; }
  double r_comm() const { return r_comm_; }

  bool has_edge(int i, int j) const;
  std::size_t edge_count() const;
  /// Unordered pairs (i < j) in lexicographic order.
  std::vector<std::pair<int, int>> edges() const;

  /// Applies the add/remove rules for every pair and returns the events in
  /// (i, j) lexicographic order. Poses must cover ids 0..n-1 exactly once.
  std::vector<EdgeEvent> update_edges(std::span<const RobotPose> poses, std::int64_t tick = 0);

  /// Connected component label per robot (smallest member id).
  std::vector<int> components() const;

 private:
  std::size_t slot(int i, int j) const { return static_cast<std::size_t>(i * n_ + j); }
  void set(int i, int j, bool v);

  int n_;
  double r_comm_;
  std::vector<std::uint8_t> adj_;
};

/// Both endpoint maps become their join. Returns true if either changed.
bool on_edge_up_merge(int i, int j, std::span<OccupancyGrid> maps);

/// Repeats pairwise merges along every present edge until no map changes,
/// so each connected component ends with identical maps. Returns the number
/// of sweeps that changed something.
int merge_to_fixpoint(const CommGraph& g, std::span<OccupancyGrid> maps);

}  // namespace efx
