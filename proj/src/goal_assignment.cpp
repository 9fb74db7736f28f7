#include "efx/goal_assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "bucket_dijkstra.hpp"

namespace efx {

const char* to_string(AssignTrigger t) {
  switch (t) {
    case AssignTrigger::Bootstrap:
      return "bootstrap";
    case AssignTrigger::Arrival:
      return "arrival";
    case AssignTrigger::Timeout:
      return "timeout";
  }
  return "unknown";
}

double reference_duration(double k_ref, Vec2 pos_pre, Vec2 goal, double v_max) {
  return k_ref * distance(pos_pre, goal) / v_max;
}

std::optional<GridCoord> select_goal_cell(const EntropyField& field, const OccupancyGrid& m,
                                          std::span<const std::uint8_t> candidates) {
  if (field.rows != m.rows() || field.cols != m.cols())
    throw StructuralError("field and map shapes differ");
  const bool masked = !candidates.empty();
  if (masked && candidates.size() != m.size())
    throw StructuralError("candidate mask size mismatch");

  std::optional<std::size_t> best;
  double best_value = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] != CellState::Free) continue;
    if (masked && candidates[i] == 0) continue;
    const double v = field.h_total[i];
    if (!std::isfinite(v)) continue;
    if (!best || v < best_value) {
      best = i;
      best_value = v;
    }
  }
  if (!best) return std::nullopt;
  return m.coord(*best);
}

std::optional<Vec2> select_new_goal(const EntropyField& field, const OccupancyGrid& m,
                                    std::span<const std::uint8_t> candidates) {
  const auto cell = select_goal_cell(field, m, candidates);
  if (!cell) return std::nullopt;
  return m.center(*cell);
}

std::optional<GridCoord> select_mef_goal_cell(const OccupancyGrid& m,
                                              const FrontierClustering& clustering,
                                              std::span<const RobotPose> visible_poses,
                                              int n_robots, const FieldParams& params,
                                              std::span<const double> noise,
                                              std::span<const std::uint8_t> candidates) {
  if (params.aggregate == FrontierAggregate::Sum)
    return select_goal_cell(
        total_field(0, m, clustering, visible_poses, n_robots, params, noise), m, candidates);
  const bool masked = !candidates.empty();
  if (masked && candidates.size() != m.size())
    throw StructuralError("candidate mask size mismatch");

  const std::vector<double> h_r = robot_field(m, visible_poses, n_robots, params, noise);
  const double eps = params.epsilon_for(m);
  const auto eligible = [&](std::size_t i) {
    return m[i] == CellState::Free && (!masked || candidates[i] != 0);
  };

  // Every cell's h_f includes the zero start value, so h_r alone is a valid
  // candidate value and its minimum bounds h_r from below.
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  double best_v = std::numeric_limits<double>::infinity();
  std::size_t best_i = kNone;
  double r_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!eligible(i)) continue;
    r_min = std::min(r_min, h_r[i]);
    if (h_r[i] < best_v) {
      best_v = h_r[i];
      best_i = i;
    }
  }
  if (best_i == kNone) return std::nullopt;

  std::vector<double> coeff(clustering.clusters.size());
  for (std::size_t q = 0; q < coeff.size(); ++q)
    coeff[q] = cluster_coefficient(clustering.clusters[q], clustering, n_robots, params);
  std::vector<std::size_t> order(coeff.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return coeff[a] > coeff[b]; });

  const auto cells = m.bytes();
  constexpr auto kOcc = static_cast<std::uint8_t>(CellState::Occupied);
  std::vector<double> dist(m.size(), std::numeric_limits<double>::infinity());
  std::vector<std::uint32_t> touched;
  for (const std::size_t q : order) {
    const double c = coeff[q];
    for (const std::uint32_t t : touched) dist[t] = std::numeric_limits<double>::infinity();
    touched.clear();
    detail::bucket_search(
        m, m.index(clustering.clusters[q].centroid), dist, nullptr, &touched,
        [&](std::size_t n) { return cells[n] != kOcc; }, [](int, int, int, int) { return true; },
        [&](std::size_t i, double d) {
          if (!eligible(i)) return;
          const double v = -c / (d > eps ? d : eps) + h_r[i];
          if (v < best_v || (v == best_v && i < best_i)) {
            best_v = v;
            best_i = i;
          }
        },
        [&](double d_lo) { return !(-c / (d_lo > eps ? d_lo : eps) + r_min > best_v); });
  }
  return m.coord(best_i);
}

std::optional<AssignTrigger> assignment_due(const GoalState& gs, Vec2 pos_cur, double now) {
  if (!gs.g_cur) return AssignTrigger::Bootstrap;
  if (distance(pos_cur, *gs.g_cur) <= gs.arrival_tolerance) return AssignTrigger::Arrival;
  if (now - gs.assigned_at >= gs.t_ref) return AssignTrigger::Timeout;
  return std::nullopt;
}

AssignResult maybe_assign(const GoalState& gs, Vec2 pos_cur, double now, Vec2 g_new) {
  AssignResult out{gs, assignment_due(gs, pos_cur, now)};
  out.state.g_new = g_new;
  if (!out.trigger) return out;
  out.state.g_cur = g_new;
  out.state.pos_pre = pos_cur;
  out.state.assigned_at = now;
  out.state.t_ref = reference_duration(gs.k_ref, pos_cur, g_new, gs.v_max);
  return out;
}

}  // namespace efx
