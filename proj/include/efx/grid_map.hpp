#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace efx {

/// Raised when two grids (or a grid and a coordinate) do not describe the
/// same lattice.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Cell knowledge. The numeric encoding is the lattice order
/// Unknown < Free < Occupied, so the map join is a byte-wise max.
enum class CellState : std::uint8_t { Unknown = 0, Free = 1, Occupied = 2 };

/// Occupancy probability view: Unknown 0.5, Free 0, Occupied 1.
double occupancy(CellState s);

char to_char(CellState s);

struct GridCoord {
  int row = 0;
  int col = 0;

  friend bool operator==(const GridCoord&, const GridCoord&) = default;
  friend auto operator<=>(const GridCoord&, const GridCoord&) = default;
};

/// Continuous world coordinates in meters. x grows with column, y with row.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

double distance(Vec2 a, Vec2 b);

class OccupancyGrid {
 public:
  OccupancyGrid() = default;
  OccupancyGrid(int rows, int cols, double resolution, CellState fill = CellState::Unknown);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double resolution() const { return resolution_; }
  std::size_t size() const { return cells_.size(); }

  bool in_bounds(GridCoord c) const {
    return c.row >= 0 && c.col >= 0 && c.row < rows_ && c.col < cols_;
  }
  std::size_t index(GridCoord c) const {
    return static_cast<std::size_t>(c.row) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(c.col);
  }
  GridCoord coord(std::size_t idx) const {
    return {static_cast<int>(idx / static_cast<std::size_t>(cols_)),
            static_cast<int>(idx % static_cast<std::size_t>(cols_))};
  }

  CellState at(GridCoord c) const { return cells_[index(c)]; }
  CellState& at(GridCoord c) { return cells_[index(c)]; }
  CellState operator[](std::size_t idx) const { return cells_[idx]; }
  CellState& operator[](std::size_t idx) { return cells_[idx]; }

  std::span<const CellState> cells() const { return cells_; }
  std::span<CellState> cells() { return cells_; }
  std::span<const std::uint8_t> bytes() const;
  std::span<std::uint8_t> bytes();

  /// Center of a cell in world coordinates.
  Vec2 center(GridCoord c) const {
    return {(c.col + 0.5) * resolution_, (c.row + 0.5) * resolution_};
  }
  /// Cell containing a world point (may be out of bounds).
  GridCoord cell_of(Vec2 p) const;

  double width_m() const { return cols_ * resolution_; }
  double height_m() const { return rows_ * resolution_; }

  bool same_shape(const OccupancyGrid& other) const;
  std::size_t count(CellState s) const;

  friend bool operator==(const OccupancyGrid&, const OccupancyGrid&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  double resolution_ = 1.0;
  std::vector<CellState> cells_;
};

void require_same_shape(const OccupancyGrid& a, const OccupancyGrid& b);

/// Cell-wise lattice join. Throws StructuralError on shape mismatch.
OccupancyGrid merge(const OccupancyGrid& a, const OccupancyGrid& b);

/// In-place join: into = into ⊔ from. Returns true if any cell of `into` changed.
bool merge_into(OccupancyGrid& into, const OccupancyGrid& from);

/// Free cells with at least one Unknown 8-neighbor, in row-major order.
std::vector<GridCoord> detect_frontiers(const OccupancyGrid& m);

struct FrontierCluster {
  std::vector<GridCoord> cells;
  GridCoord centroid;
  std::size_t size() const { return cells.size(); }
};

struct FrontierClustering {
  std::vector<FrontierCluster> clusters;
  std::size_t total_frontier_cells = 0;

  std::size_t cluster_count() const { return clusters.size(); }
};

/// 8-connected components of the frontier set. Cluster order follows the
/// row-major position of each component's first cell; cells inside a cluster
/// are row-major sorted. The centroid is the member closest to the mean.
FrontierClustering cluster_frontiers(std::span<const GridCoord> frontiers);

/// Mask (1 = reachable) of Free cells of `truth` 8-connected to any of `seeds`.
std::vector<std::uint8_t> reachable_free_mask(const OccupancyGrid& truth,
                                              std::span<const GridCoord> seeds);

/// Fraction of masked cells that are known (non-Unknown) in `m`.
double coverage_fraction(const OccupancyGrid& m, std::span<const std::uint8_t> mask);

/// Fraction of truth's Free cells reachable from `seeds` that are known in `m`.
double coverage_fraction(const OccupancyGrid& m, const OccupancyGrid& truth,
                         std::span<const GridCoord> seeds);

inline constexpr GridCoord kNeighbors8[8] = {{-1, -1}, {-1, 0}, {-1, 1}, {0, -1},
                                             {0, 1},   {1, -1}, {1, 0},  {1, 1}};

}  // namespace efx
