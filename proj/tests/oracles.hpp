#pragma once

// Slow, obviously-correct reference computations used only by tests. None of
// these call into the library code they are compared against.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "efx/grid_map.hpp"

namespace oracle {

using efx::CellState;
using efx::GridCoord;
using efx::OccupancyGrid;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Join written as an explicit truth table.
inline CellState join(CellState a, CellState b) {
  if (a == CellState::Occupied || b == CellState::Occupied) return CellState::Occupied;
  if (a == CellState::Free || b == CellState::Free) return CellState::Free;
  return CellState::Unknown;
}

inline OccupancyGrid join(const OccupancyGrid& a, const OccupancyGrid& b) {
  OccupancyGrid out(a.rows(), a.cols(), a.resolution());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) out.at({r, c}) = join(a.at({r, c}), b.at({r, c}));
  return out;
}

inline OccupancyGrid random_grid(std::mt19937_64& rng, int rows, int cols, double res,
                                 double p_unknown = 1.0 / 3, double p_free = 1.0 / 3) {
  OccupancyGrid g(rows, cols, res);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const double x = u(rng);
      g.at({r, c}) = x < p_unknown            ? CellState::Unknown
                     : x < p_unknown + p_free ? CellState::Free
                                              : CellState::Occupied;
    }
  }
  return g;
}

inline bool in(const OccupancyGrid& g, int r, int c) {
  return r >= 0 && c >= 0 && r < g.rows() && c < g.cols();
}

inline std::vector<GridCoord> frontiers(const OccupancyGrid& g) {
  std::vector<GridCoord> out;
  for (int r = 0; r < g.rows(); ++r) {
    for (int c = 0; c < g.cols(); ++c) {
      if (g.at({r, c}) != CellState::Free) continue;
      bool unknown_near = false;
      for (int dr = -1; dr <= 1; ++dr)
        for (int dc = -1; dc <= 1; ++dc)
          if ((dr || dc) && in(g, r + dr, c + dc) && g.at({r + dr, c + dc}) == CellState::Unknown)
            unknown_near = true;
      if (unknown_near) out.push_back({r, c});
    }
  }
  return out;
}

/// Component label per frontier cell by repeated label propagation.
inline std::vector<int> component_labels(const std::vector<GridCoord>& cells) {
  std::vector<int> label(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) label[i] = static_cast<int>(i);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      for (std::size_t j = 0; j < cells.size(); ++j) {
        const int dr = std::abs(cells[i].row - cells[j].row);
        const int dc = std::abs(cells[i].col - cells[j].col);
        if (std::max(dr, dc) == 1 && label[j] < label[i]) {
          label[i] = label[j];
          changed = true;
        }
      }
    }
  }
  return label;
}

struct Cluster {
  std::vector<GridCoord> cells;  // row-major
  GridCoord centroid;
};

/// Components of the frontier set in order of their first cell; the centroid
/// is the member nearest the component mean, earliest member on ties.
inline std::vector<Cluster> clusters(const OccupancyGrid& g) {
  const auto f = frontiers(g);
  const auto label = component_labels(f);
  std::vector<Cluster> out;
  std::vector<int> seen;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (std::find(seen.begin(), seen.end(), label[i]) != seen.end()) continue;
    seen.push_back(label[i]);
    Cluster c;
    for (std::size_t j = 0; j < f.size(); ++j)
      if (label[j] == label[i]) c.cells.push_back(f[j]);
    double mr = 0, mc = 0;
    for (const auto& x : c.cells) {
      mr += x.row;
      mc += x.col;
    }
    mr /= c.cells.size();
    mc /= c.cells.size();
    double best = kInf;
    for (const auto& x : c.cells) {
      const double d = (x.row - mr) * (x.row - mr) + (x.col - mc) * (x.col - mc);
      if (d < best) {
        best = d;
        c.centroid = x;
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

/// Bellman-Ford style relaxation until nothing changes. `passable` decides
/// cells; with `no_corner_cut` a diagonal step needs both side cells passable.
template <class Passable>
std::vector<double> shortest_paths(const OccupancyGrid& g, GridCoord src, Passable passable,
                                   bool no_corner_cut) {
  std::vector<double> d(g.size(), kInf);
  d[g.index(src)] = 0.0;
  const double axial = g.resolution();
  const double diag = g.resolution() * std::sqrt(2.0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int r = 0; r < g.rows(); ++r) {
      for (int c = 0; c < g.cols(); ++c) {
        const double here = d[g.index({r, c})];
        if (here == kInf) continue;
        for (int dr = -1; dr <= 1; ++dr) {
          for (int dc = -1; dc <= 1; ++dc) {
            if (!dr && !dc) continue;
            const int nr = r + dr, nc = c + dc;
            if (!in(g, nr, nc) || !passable(g.at({nr, nc}))) continue;
            if (dr && dc && no_corner_cut &&
                (!passable(g.at({r + dr, c})) || !passable(g.at({r, c + dc}))))
              continue;
            const double cand = here + ((dr && dc) ? diag : axial);
            double& there = d[g.index({nr, nc})];
            if (cand < there - 1e-12) {
              there = cand;
              changed = true;
            }
          }
        }
      }
    }
  }
  return d;
}

inline std::vector<double> wavefront(const OccupancyGrid& g, GridCoord src) {
  return shortest_paths(
      g, src, [](CellState s) { return s != CellState::Occupied; }, false);
}

inline std::vector<double> free_space(const OccupancyGrid& g, GridCoord src) {
  return shortest_paths(
      g, src, [](CellState s) { return s == CellState::Free; }, true);
}

struct Robot {
  int id;
  double x;
  double y;
};

struct FieldInputs {
  double k_f_base = 2.0;
  double k_r = 1.0;
  double sigma_r = 0.6;
  double d_s = 7.0;
  double eps = 0.05;
  int n_robots = 3;
};

/// Per-cell field recomputed from scratch, straight from the closed forms:
/// frontier term min over centroids of -(k_f C_q / max(d*, eps)) ln(N_C C_q),
/// robot term sum over robots within d_s of
/// k_r sigma_r N_r ln(N_r) / min(d - d_s, -eps) + noise. NaN off Free cells.
struct Field {
  std::vector<double> h_f, h_r, h_total;
};

inline Field field(const OccupancyGrid& g, const std::vector<std::vector<GridCoord>>& clusters,
                   const std::vector<GridCoord>& centroids, const std::vector<Robot>& robots,
                   const FieldInputs& in, const std::vector<double>& noise = {}) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  Field f;
  f.h_f.assign(g.size(), nan);
  f.h_r.assign(g.size(), nan);
  f.h_total.assign(g.size(), nan);
  const double k_f = std::pow(in.k_f_base, in.n_robots - 3);
  const double n_c = static_cast<double>(clusters.size());
  std::vector<std::vector<double>> dist;
  for (const GridCoord& q : centroids) dist.push_back(wavefront(g, q));
  for (int r = 0; r < g.rows(); ++r) {
    for (int c = 0; c < g.cols(); ++c) {
      const std::size_t i = g.index({r, c});
      if (g.at({r, c}) != CellState::Free) continue;
      double hf = 0.0;
      for (std::size_t q = 0; q < clusters.size(); ++q) {
        const double d = dist[q][i];
        if (d == kInf) continue;
        const double cq = static_cast<double>(clusters[q].size());
        const double v = -(k_f * cq / std::max(d, in.eps)) * std::log(n_c * cq);
        hf = std::min(hf, v);
      }
      double hr = 0.0;
      const double px = (c + 0.5) * g.resolution();
      const double py = (r + 0.5) * g.resolution();
      for (const Robot& rb : robots) {
        const double d = std::hypot(px - rb.x, py - rb.y);
        if (d >= in.d_s) continue;
        const double nr = in.n_robots;
        hr += in.k_r * in.sigma_r * nr * std::log(nr) / std::min(d - in.d_s, -in.eps) +
              (noise.empty() ? 0.0 : noise[static_cast<std::size_t>(rb.id)]);
      }
      f.h_f[i] = hf;
      f.h_r[i] = hr;
      f.h_total[i] = hf + hr;
    }
  }
  return f;
}

struct Stats {
  std::optional<double> mean, sd, rsd;
  double success_pct = 0.0;
};

inline Stats stats(const std::vector<std::pair<bool, double>>& rounds) {
  Stats s;
  std::vector<double> t;
  for (const auto& [ok, time] : rounds)
    if (ok) t.push_back(time);
  s.success_pct = rounds.empty() ? 0.0 : 100.0 * t.size() / rounds.size();
  if (t.empty()) return s;
  double m = 0;
  for (double x : t) m += x;
  m /= t.size();
  double v = 0;
  for (double x : t) v += (x - m) * (x - m);
  s.mean = m;
  s.sd = std::sqrt(v / t.size());
  if (t.size() >= 2) s.rsd = 100.0 * *s.sd / m;
  return s;
}

}  // namespace oracle
