#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "efx/comm_graph.hpp"
#include "efx/grid_map.hpp"

namespace efx {

/// How a cell's frontier term combines the per-centroid values.
enum class FrontierAggregate : std::uint8_t { Min, Sum };

struct FieldParams {
  double k_f_base = 2.0;  // k_f(N_r) = k_f_base^(N_r - 3)
  double k_r = 1.0;
  double sigma_r = 0.6;   // relaxation distance, m
  double alpha = 2.0;     // noise color
  double sigma_d = 0.035; // noise std
  double sensor_range = 7.0;
  double epsilon_d = 0.0; // denominator clamp, m; <= 0 means one grid cell
  FrontierAggregate aggregate = FrontierAggregate::Min;

  double k_f(int n_robots) const;
  double epsilon_for(const OccupancyGrid& m) const {
    return epsilon_d > 0.0 ? epsilon_d : m.resolution();
  }
  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// Obstacle-aware shortest-path distance (m) from one source cell. Free and
/// Unknown cells are traversable, 8-connected, axial step = resolution,
/// diagonal step = resolution * sqrt(2). Unreachable cells hold +inf.
struct WavefrontDistanceMap {
  GridCoord source;
  int rows = 0;
  int cols = 0;
  std::vector<double> dist;

  double at(GridCoord c) const {
    return dist[static_cast<std::size_t>(c.row) * static_cast<std::size_t>(cols) +
                static_cast<std::size_t>(c.col)];
  }
};

/// Throws std::invalid_argument if `source` is out of bounds or Occupied.
WavefrontDistanceMap wavefront_distance(const OccupancyGrid& m, GridCoord source);

/// Same propagation into a caller-owned buffer (resized as needed).
void wavefront_distance_into(const OccupancyGrid& m, GridCoord source, std::vector<double>& dist);

/// Closed-form frontier entropy for a centroid with `cluster_size` cells among
/// `cluster_count` clusters, seen from distance `d_star`. `cluster_size` may be
/// fractional to probe the vanishing-frontier limit. Infinite d_star yields 0.
double frontier_entropy_value(double cluster_size, double cluster_count, int n_robots,
                              double d_star, const FieldParams& params, double epsilon);

double frontier_entropy(GridCoord p, const FrontierCluster& q,
                        const FrontierClustering& clustering, int n_robots,
                        const WavefrontDistanceMap& d_star, const FieldParams& params,
                        double epsilon);

/// Coefficient k_r * sigma_r * N_r * ln N_r of each robot ring.
double robot_ring_coeff(int n_robots, const FieldParams& params);

/// Robot entropy at world point p from every robot in `poses` whose distance
/// to p is below the sensor range. `noise` is indexed by robot id; empty
/// means noise off.
double robot_entropy(Vec2 p, std::span<const RobotPose> poses, int n_robots,
                     const FieldParams& params, double epsilon,
                     std::span<const double> noise = {});

/// k_f(N_r) * C_q * ln(N_C * C_q) for cluster q.
double cluster_coefficient(const FrontierCluster& q, const FrontierClustering& clustering,
                           int n_robots, const FieldParams& params);

/// h_r on every cell of `m` (no masking); zero outside all sensor disks.
std::vector<double> robot_field(const OccupancyGrid& m, std::span<const RobotPose> visible_poses,
                                int n_robots, const FieldParams& params,
                                std::span<const double> noise = {});

/// Per-cell field of one robot's planning cycle. Non-Free cells carry NaN.
struct EntropyField {
  int owner = 0;
  int rows = 0;
  int cols = 0;
  double resolution = 1.0;
  std::vector<double> h_f;
  std::vector<double> h_r;
  std::vector<double> h_total;

  std::size_t index(GridCoord c) const {
    return static_cast<std::size_t>(c.row) * static_cast<std::size_t>(cols) +
           static_cast<std::size_t>(c.col);
  }
};

/// h_f from every cluster (min or sum over centroids), h_r from every visible
/// robot, h_total = h_f + h_r, evaluated on Free cells of `m`.
EntropyField total_field(int robot, const OccupancyGrid& m, const FrontierClustering& clustering,
                         std::span<const RobotPose> visible_poses, int n_robots,
                         const FieldParams& params, std::span<const double> noise = {});

/// Per-robot colored noise scalars.
struct NoiseState {
  std::vector<double> values;
  std::vector<std::vector<double>> history;  // white draws, newest first (general alpha only)
};

NoiseState make_noise_state(int n_robots);

/// One noise step for every robot. alpha = 2 is a clamped Brownian walk,
/// alpha = 0 white noise, other alpha use a truncated 1/f^alpha filter.
/// Values stay within +-10 sigma_d.
void advance_noise(NoiseState& state, std::mt19937_64& rng, const FieldParams& params);

}  // namespace efx
