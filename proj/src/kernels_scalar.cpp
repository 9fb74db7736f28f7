#include "efx/kernels.hpp"

#include <cmath>

namespace efx::kernels {
namespace {

void join_bytes(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b,
                std::span<std::uint8_t> out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] < b[i] ? b[i] : a[i];
}

bool join_into(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src) {
  bool changed = false;
  for (std::size_t i = 0; i < dst.size(); ++i) {
    if (src[i] > dst[i]) {
      dst[i] = src[i];
      changed = true;
    }
  }
  return changed;
}

std::size_t count_known_masked(std::span<const std::uint8_t> cells,
                               std::span<const std::uint8_t> mask) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < cells.size(); ++i) n += (mask[i] != 0 && cells[i] != 0);
  return n;
}

void frontier_min(std::span<const double> dist, double coeff, double eps, std::span<double> h) {
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double d = dist[i] > eps ? dist[i] : eps;
    const double v = -coeff / d;
    h[i] = v < h[i] ? v : h[i];
  }
}

void frontier_sum(std::span<const double> dist, double coeff, double eps, std::span<double> h) {
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double d = dist[i] > eps ? dist[i] : eps;
    h[i] = h[i] + -coeff / d;
  }
}

void robot_ring(const RowGeometry& row, const RobotTerm& t, std::span<double> h) {
  const double dy = row.y - t.y;
  const double neg_eps = -t.epsilon;
  for (std::size_t k = 0; k < h.size(); ++k) {
    const double cx = (static_cast<double>(row.first_col + static_cast<int>(k)) + 0.5) * row.resolution;
    const double dx = cx - t.x;
    const double d = std::sqrt(dx * dx + dy * dy);
    if (d < t.sensor_range) {
      const double diff = d - t.sensor_range;
      const double den = diff < neg_eps ? diff : neg_eps;
      h[k] = h[k] + (t.coeff / den + t.noise);
    }
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{"scalar", join_bytes, join_into, count_known_masked,
                                 frontier_min, frontier_sum, robot_ring};
  return table;
}

}  // namespace efx::kernels
