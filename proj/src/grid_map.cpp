#include "efx/grid_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "efx/kernels.hpp"

namespace efx {

double occupancy(CellState s) {
  switch (s) {
    case CellState::Free:
      return 0.0;
    case CellState::Occupied:
      return 1.0;
    case CellState::Unknown:
      break;
  }
  return 0.5;
}

char to_char(CellState s) {
  switch (s) {
    case CellState::Free:
      return '.';
    case CellState::Occupied:
      return '#';
    case CellState::Unknown:
      break;
  }
  return '?';
}

double distance(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

OccupancyGrid::OccupancyGrid(int rows, int cols, double resolution, CellState fill)
    : rows_(rows), cols_(cols), resolution_(resolution) {
  if (rows <= 0 || cols <= 0) throw StructuralError("grid dimensions must be positive");
  if (!(resolution > 0.0) || !std::isfinite(resolution))
    throw StructuralError("grid resolution must be positive");
  cells_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill);
}

std::span<const std::uint8_t> OccupancyGrid::bytes() const {
  return {reinterpret_cast<const std::uint8_t*>(cells_.data()), cells_.size()};
}

std::span<std::uint8_t> OccupancyGrid::bytes() {
  return {reinterpret_cast<std::uint8_t*>(cells_.data()), cells_.size()};
}

GridCoord OccupancyGrid::cell_of(Vec2 p) const {
  return {static_cast<int>(std::floor(p.y / resolution_)),
          static_cast<int>(std::floor(p.x / resolution_))};
}

bool OccupancyGrid::same_shape(const OccupancyGrid& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && resolution_ == other.resolution_;
}

std::size_t OccupancyGrid::count(CellState s) const {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), s));
}

void require_same_shape(const OccupancyGrid& a, const OccupancyGrid& b) {
  if (!a.same_shape(b)) {
    throw StructuralError("grid shape mismatch: " + std::to_string(a.rows()) + "x" +
                          std::to_string(a.cols()) + "@" + std::to_string(a.resolution()) +
                          " vs " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()) +
                          "@" + std::to_string(b.resolution()));
  }
}

OccupancyGrid merge(const OccupancyGrid& a, const OccupancyGrid& b) {
  require_same_shape(a, b);
  OccupancyGrid out = a;
  kernels::active().join_bytes(a.bytes(), b.bytes(), out.bytes());
  return out;
}

bool merge_into(OccupancyGrid& into, const OccupancyGrid& from) {
  require_same_shape(into, from);
  return kernels::active().join_into(into.bytes(), from.bytes());
}

std::vector<GridCoord> detect_frontiers(const OccupancyGrid& m) {
  std::vector<GridCoord> out;
  const int rows = m.rows();
  const int cols = m.cols();
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (m.at({r, c}) != CellState::Free) continue;
      for (const GridCoord& d : kNeighbors8) {
        const GridCoord n{r + d.row, c + d.col};
        if (m.in_bounds(n) && m.at(n) == CellState::Unknown) {
          out.push_back({r, c});
          break;
        }
      }
    }
  }
  return out;
}

namespace {

GridCoord nearest_to_mean(const std::vector<GridCoord>& cells) {
  double mr = 0.0;
  double mc = 0.0;
  for (const GridCoord& c : cells) {
    mr += c.row;
    mc += c.col;
  }
  mr /= static_cast<double>(cells.size());
  mc /= static_cast<double>(cells.size());
  GridCoord best = cells.front();
  double best_d2 = std::numeric_limits<double>::infinity();
  // cells are row-major sorted, so strict < keeps the row-major-first tie.
  for (const GridCoord& c : cells) {
    const double d2 = (c.row - mr) * (c.row - mr) + (c.col - mc) * (c.col - mc);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = c;
    }
  }
  return best;
}

}  // namespace

FrontierClustering cluster_frontiers(std::span<const GridCoord> frontiers) {
  FrontierClustering result;
  if (frontiers.empty()) return result;

  std::vector<GridCoord> sorted(frontiers.begin(), frontiers.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  // Sorted lookup keeps this independent of grid size.
  auto find = [&](GridCoord c) -> std::ptrdiff_t {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), c);
    if (it == sorted.end() || *it != c) return -1;
    return it - sorted.begin();
  };

  std::vector<char> seen(sorted.size(), 0);
  std::vector<std::size_t> stack;
  for (std::size_t start = 0; start < sorted.size(); ++start) {
    if (seen[start]) continue;
    FrontierCluster cluster;
    seen[start] = 1;
    stack.push_back(start);
    while (!stack.empty()) {
      const std::size_t cur = stack.back();
      stack.pop_back();
      cluster.cells.push_back(sorted[cur]);
      for (const GridCoord& d : kNeighbors8) {
        const std::ptrdiff_t n = find({sorted[cur].row + d.row, sorted[cur].col + d.col});
        if (n >= 0 && !seen[static_cast<std::size_t>(n)]) {
          seen[static_cast<std::size_t>(n)] = 1;
          stack.push_back(static_cast<std::size_t>(n));
        }
      }
    }
    std::sort(cluster.cells.begin(), cluster.cells.end());
    cluster.centroid = nearest_to_mean(cluster.cells);
    result.total_frontier_cells += cluster.cells.size();
    result.clusters.push_back(std::move(cluster));
  }
  return result;
}

std::vector<std::uint8_t> reachable_free_mask(const OccupancyGrid& truth,
                                              std::span<const GridCoord> seeds) {
  std::vector<std::uint8_t> mask(truth.size(), 0);
  std::vector<GridCoord> stack;
  for (const GridCoord& s : seeds) {
    if (!truth.in_bounds(s) || truth.at(s) != CellState::Free) continue;
    if (mask[truth.index(s)]) continue;
    mask[truth.index(s)] = 1;
    stack.push_back(s);
  }
  while (!stack.empty()) {
    const GridCoord cur = stack.back();
    stack.pop_back();
    for (const GridCoord& d : kNeighbors8) {
      const GridCoord n{cur.row + d.row, cur.col + d.col};
      if (!truth.in_bounds(n) || truth.at(n) != CellState::Free) continue;
      const std::size_t idx = truth.index(n);
      if (mask[idx]) continue;
      mask[idx] = 1;
      stack.push_back(n);
    }
  }
  return mask;
}

double coverage_fraction(const OccupancyGrid& m, std::span<const std::uint8_t> mask) {
  if (mask.size() != m.size()) throw StructuralError("coverage mask size mismatch");
  const auto& k = kernels::active();
  const std::size_t total = k.count_known_masked(mask, mask);
  if (total == 0) return 0.0;
  return static_cast<double>(k.count_known_masked(m.bytes(), mask)) /
         static_cast<double>(total);
}

double coverage_fraction(const OccupancyGrid& m, const OccupancyGrid& truth,
                         std::span<const GridCoord> seeds) {
  require_same_shape(m, truth);
  const auto mask = reachable_free_mask(truth, seeds);
  return coverage_fraction(m, mask);
}

}  // namespace efx
