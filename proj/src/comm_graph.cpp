#include "efx/comm_graph.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace efx {

const char* to_string(EdgeEventType t) { return t == EdgeEventType::Up ? "edge_up" : "edge_down"; }

CommGraph::CommGraph(int robot_count, double r_comm) : n_(robot_count), r_comm_(r_comm) {
  if (robot_count <= 0) throw StructuralError("robot_count must be positive");
  if (std::isnan(r_comm) || r_comm < 0.0) throw StructuralError("r_comm must be >= 0");
  adj_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), 0);
}

bool CommGraph::has_edge(int i, int j) const {
  if (i < 0 || j < 0 || i >= n_ || j >= n_) return false;
  return adj_[slot(i, j)] != 0;
}

void CommGraph::set(int i, int j, bool v) {
  adj_[slot(i, j)] = v;
  adj_[slot(j, i)] = v;
}

std::size_t CommGraph::edge_count() const { return edges().size(); }

std::vector<std::pair<int, int>> CommGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (adj_[slot(i, j)]) out.emplace_back(i, j);
  return out;
}

std::vector<EdgeEvent> CommGraph::update_edges(std::span<const RobotPose> poses,
                                               std::int64_t tick) {
  if (poses.size() != static_cast<std::size_t>(n_))
    throw StructuralError("expected " + std::to_string(n_) + " poses, got " +
                          std::to_string(poses.size()));
  std::vector<const RobotPose*> by_id(static_cast<std::size_t>(n_), nullptr);
  for (const RobotPose& p : poses) {
    if (p.robot_id < 0 || p.robot_id >= n_)
      throw StructuralError("robot id out of range: " + std::to_string(p.robot_id));
    auto& slot_ref = by_id[static_cast<std::size_t>(p.robot_id)];
    if (slot_ref) throw StructuralError("duplicate robot id: " + std::to_string(p.robot_id));
    slot_ref = &p;
  }

  std::vector<EdgeEvent> events;
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      const double d = distance(by_id[static_cast<std::size_t>(i)]->position,
                                by_id[static_cast<std::size_t>(j)]->position);
      const bool present = adj_[slot(i, j)] != 0;
      if (d < r_comm_ && !present) {
        set(i, j, true);
        events.push_back({tick, EdgeEventType::Up, i, j});
      } else if (!(d < r_comm_) && present) {
        set(i, j, false);
        events.push_back({tick, EdgeEventType::Down, i, j});
      }
    }
  }
  return events;
}

std::vector<int> CommGraph::components() const {
  std::vector<int> parent(static_cast<std::size_t>(n_));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
    return x;
  };
  for (const auto& [i, j] : edges()) {
    const int a = find(i);
    const int b = find(j);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
  std::vector<int> label(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) label[static_cast<std::size_t>(i)] = find(i);
  return label;
}

bool on_edge_up_merge(int i, int j, std::span<OccupancyGrid> maps) {
  auto& mi = maps[static_cast<std::size_t>(i)];
  auto& mj = maps[static_cast<std::size_t>(j)];
  const bool changed_i = merge_into(mi, mj);
  const bool changed_j = merge_into(mj, mi);
  return changed_i || changed_j;
}

int merge_to_fixpoint(const CommGraph& g, std::span<OccupancyGrid> maps) {
  const auto edges = g.edges();
  int sweeps = 0;
  for (;;) {
    bool changed = false;
    for (const auto& [i, j] : edges) changed |= on_edge_up_merge(i, j, maps);
    if (!changed) break;
    ++sweeps;
  }
  return sweeps;
}

}  // namespace efx
