#include "efx/entropy_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "bucket_dijkstra.hpp"
#include "efx/kernels.hpp"

namespace efx {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::size_t kNoiseTaps = 256;

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw std::invalid_argument(std::string(name) + " must be positive and finite");
}

}  // namespace

double FieldParams::k_f(int n_robots) const { return std::pow(k_f_base, n_robots - 3); }

void FieldParams::validate() const {
  require_positive(k_f_base, "k_f_base");
  require_positive(k_r, "k_r");
  require_positive(sigma_r, "sigma_r");
  require_positive(sensor_range, "d_s");
  if (!(sigma_d >= 0.0) || !std::isfinite(sigma_d))
    throw std::invalid_argument("sigma_d must be >= 0");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be >= 0");
  if (std::isnan(epsilon_d) || epsilon_d < 0.0)
    throw std::invalid_argument("epsilon_d must be >= 0 (0 selects one grid cell)");
}

void wavefront_distance_into(const OccupancyGrid& m, GridCoord source, std::vector<double>& dist) {
  if (!m.in_bounds(source))
    throw std::invalid_argument("wavefront source out of bounds");
  if (m.at(source) == CellState::Occupied)
    throw std::invalid_argument("wavefront source is Occupied");
  const auto cells = m.bytes();
  constexpr auto kOcc = static_cast<std::uint8_t>(CellState::Occupied);
  detail::bucket_dijkstra(
      m, m.index(source), dist, nullptr, [&](std::size_t n) { return cells[n] != kOcc; },
      [](int, int, int, int) { return true; });
}

WavefrontDistanceMap wavefront_distance(const OccupancyGrid& m, GridCoord source) {
  WavefrontDistanceMap out;
  out.source = source;
  out.rows = m.rows();
  out.cols = m.cols();
  wavefront_distance_into(m, source, out.dist);
  return out;
}

double frontier_entropy_value(double cluster_size, double cluster_count, int n_robots,
                              double d_star, const FieldParams& params, double epsilon) {
  if (!std::isfinite(d_star)) return 0.0;
  const double coeff = params.k_f(n_robots) * cluster_size * std::log(cluster_count * cluster_size);
  return -coeff / std::max(d_star, epsilon);
}

double frontier_entropy(GridCoord p, const FrontierCluster& q,
                        const FrontierClustering& clustering, int n_robots,
                        const WavefrontDistanceMap& d_star, const FieldParams& params,
                        double epsilon) {
  return frontier_entropy_value(static_cast<double>(q.size()),
                                static_cast<double>(clustering.cluster_count()), n_robots,
                                d_star.at(p), params, epsilon);
}

double robot_ring_coeff(int n_robots, const FieldParams& params) {
  return params.k_r * params.sigma_r * n_robots * std::log(static_cast<double>(n_robots));
}

double robot_entropy(Vec2 p, std::span<const RobotPose> poses, int n_robots,
                     const FieldParams& params, double epsilon, std::span<const double> noise) {
  const double coeff = robot_ring_coeff(n_robots, params);
  const double neg_eps = -epsilon;
  double h = 0.0;
  for (const RobotPose& pose : poses) {
    const double dx = p.x - pose.position.x;
    const double dy = p.y - pose.position.y;
    const double d = std::sqrt(dx * dx + dy * dy);
    if (!(d < params.sensor_range)) continue;
    const double diff = d - params.sensor_range;
    const double den = diff < neg_eps ? diff : neg_eps;
    const double chi =
        noise.empty() ? 0.0 : noise[static_cast<std::size_t>(pose.robot_id)];
    h = h + (coeff / den + chi);
  }
  return h;
}

double cluster_coefficient(const FrontierCluster& q, const FrontierClustering& clustering,
                           int n_robots, const FieldParams& params) {
  const double n_c = static_cast<double>(clustering.cluster_count());
  const double c_q = static_cast<double>(q.size());
  return params.k_f(n_robots) * c_q * std::log(n_c * c_q);
}

std::vector<double> robot_field(const OccupancyGrid& m, std::span<const RobotPose> visible_poses,
                                int n_robots, const FieldParams& params,
                                std::span<const double> noise) {
  const auto& k = kernels::active();
  const double eps = params.epsilon_for(m);
  std::vector<double> h(m.size(), 0.0);
  const double ring = robot_ring_coeff(n_robots, params);
  const double res = m.resolution();
  const double ds = params.sensor_range;
  for (const RobotPose& pose : visible_poses) {
    kernels::RobotTerm term{pose.position.x, pose.position.y, ring, ds, eps,
                            noise.empty() ? 0.0 : noise[static_cast<std::size_t>(pose.robot_id)]};
    const int r0 = std::max(0, static_cast<int>(std::floor((pose.position.y - ds) / res)) - 1);
    const int r1 = std::min(m.rows() - 1, static_cast<int>(std::ceil((pose.position.y + ds) / res)) + 1);
    const int c0 = std::max(0, static_cast<int>(std::floor((pose.position.x - ds) / res)) - 1);
    const int c1 = std::min(m.cols() - 1, static_cast<int>(std::ceil((pose.position.x + ds) / res)) + 1);
    if (r0 > r1 || c0 > c1) continue;
    const auto width = static_cast<std::size_t>(c1 - c0 + 1);
    for (int r = r0; r <= r1; ++r) {
      const kernels::RowGeometry row{c0, res, (static_cast<double>(r) + 0.5) * res};
      k.robot_ring(row, term, std::span<double>(h).subspan(m.index({r, c0}), width));
    }
  }
  return h;
}

EntropyField total_field(int robot, const OccupancyGrid& m, const FrontierClustering& clustering,
                         std::span<const RobotPose> visible_poses, int n_robots,
                         const FieldParams& params, std::span<const double> noise) {
  const auto& k = kernels::active();
  const double eps = params.epsilon_for(m);
  const std::size_t n = m.size();

  EntropyField field;
  field.owner = robot;
  field.rows = m.rows();
  field.cols = m.cols();
  field.resolution = m.resolution();
  field.h_f.assign(n, 0.0);

  std::vector<double> dist;
  for (const FrontierCluster& q : clustering.clusters) {
    const double coeff = cluster_coefficient(q, clustering, n_robots, params);
    wavefront_distance_into(m, q.centroid, dist);
    if (params.aggregate == FrontierAggregate::Min)
      k.frontier_min(dist, coeff, eps, field.h_f);
    else
      k.frontier_sum(dist, coeff, eps, field.h_f);
  }
  field.h_r = robot_field(m, visible_poses, n_robots, params, noise);

  field.h_total.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i] == CellState::Free) {
      field.h_total[i] = field.h_f[i] + field.h_r[i];
    } else {
      field.h_f[i] = kNaN;
      field.h_r[i] = kNaN;
      field.h_total[i] = kNaN;
    }
  }
  return field;
}

NoiseState make_noise_state(int n_robots) {
  NoiseState s;
  s.values.assign(static_cast<std::size_t>(n_robots), 0.0);
  s.history.assign(static_cast<std::size_t>(n_robots), {});
  return s;
}

void advance_noise(NoiseState& state, std::mt19937_64& rng, const FieldParams& params) {
  const double sigma = params.sigma_d;
  if (sigma == 0.0) {
    std::fill(state.values.begin(), state.values.end(), 0.0);
    return;
  }
  const double bound = 10.0 * sigma;
  std::normal_distribution<double> white(0.0, sigma);
  for (std::size_t i = 0; i < state.values.size(); ++i) {
    const double w = white(rng);
    double x;
    if (params.alpha == 2.0) {
      x = state.values[i] + w;
    } else if (params.alpha == 0.0) {
      x = w;
    } else {
      // Fractional differencing filter: h_0 = 1, h_k = h_{k-1} (alpha/2 + k - 1) / k.
      auto& hist = state.history[i];
      hist.insert(hist.begin(), w);
      if (hist.size() > kNoiseTaps) hist.pop_back();
      double coeff = 1.0;
      x = 0.0;
      for (std::size_t kk = 0; kk < hist.size(); ++kk) {
        if (kk > 0) coeff *= (params.alpha / 2.0 + static_cast<double>(kk) - 1.0) /
                             static_cast<double>(kk);
        x += coeff * hist[kk];
      }
    }
    state.values[i] = std::clamp(x, -bound, bound);
  }
}

}  // namespace efx
