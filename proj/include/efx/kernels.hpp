#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference and an AVX2
// variant; the active table is picked once at startup from CPU features and
// can be forced with EFX_SIMD=scalar|avx2. Variants are bit-identical: no
// FMA, and IEEE division/sqrt round the same in both.

#include <cstddef>
#include <cstdint>
#include <span>

namespace efx::kernels {

/// One grid row slice. Cell `k` of the slice has center
/// ((first_col + k + 0.5) * resolution, y).
struct RowGeometry {
  int first_col;
  double resolution;
  double y;
};

/// Parameters of the robot entropy ring around one robot.
struct RobotTerm {
  double x;
  double y;
  double coeff;        // k_r * sigma_r * N_r * ln N_r
  double sensor_range; // d_s
  double epsilon;      // denominator clamp
  double noise;        // chi added to every in-range cell
};

struct KernelTable {
  const char* name;

  /// out[i] = max(a[i], b[i]).
  void (*join_bytes)(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b,
                     std::span<std::uint8_t> out);

  /// dst[i] = max(dst[i], src[i]); true when any byte changed.
  bool (*join_into)(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src);

  /// Number of i with mask[i] != 0 and cells[i] != 0.
  std::size_t (*count_known_masked)(std::span<const std::uint8_t> cells,
                                    std::span<const std::uint8_t> mask);

  /// h[i] = min(h[i], -coeff / max(dist[i], eps)).
  void (*frontier_min)(std::span<const double> dist, double coeff, double eps,
                       std::span<double> h);

  /// h[i] += -coeff / max(dist[i], eps).
  void (*frontier_sum)(std::span<const double> dist, double coeff, double eps,
                       std::span<double> h);

  /// For each cell k of the row with d = |center_k - robot| < d_s:
  /// h[k] += coeff / min(d - d_s, -eps) + noise.
  void (*robot_ring)(const RowGeometry& row, const RobotTerm& term, std::span<double> h);
};

const KernelTable& scalar_table();

/// nullptr when the binary or the CPU lacks AVX2.
const KernelTable* avx2_table();

/// Table used by the library.
const KernelTable& active();

}  // namespace efx::kernels
