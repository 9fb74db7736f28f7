#include "efx/kernels.hpp"

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
#define EFX_HAVE_AVX2_KERNELS 1
#include <immintrin.h>
#endif

#ifdef EFX_HAVE_AVX2_KERNELS

#include <bit>

#define EFX_AVX2 __attribute__((target("avx2,popcnt")))

namespace efx::kernels {
namespace {

EFX_AVX2 void join_bytes(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b,
                         std::span<std::uint8_t> out) {
  const std::size_t n = out.size();
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a.data() + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b.data() + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out.data() + i), _mm256_max_epu8(va, vb));
  }
  for (; i < n; ++i) out[i] = a[i] < b[i] ? b[i] : a[i];
}

EFX_AVX2 bool join_into(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src) {
  const std::size_t n = dst.size();
  __m256i diff = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    auto* p = reinterpret_cast<__m256i*>(dst.data() + i);
    const __m256i d = _mm256_loadu_si256(p);
    const __m256i m = _mm256_max_epu8(d, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src.data() + i)));
    diff = _mm256_or_si256(diff, _mm256_xor_si256(m, d));
    _mm256_storeu_si256(p, m);
  }
  bool changed = !_mm256_testz_si256(diff, diff);
  for (; i < n; ++i) {
    if (src[i] > dst[i]) {
      dst[i] = src[i];
      changed = true;
    }
  }
  return changed;
}

EFX_AVX2 std::size_t count_known_masked(std::span<const std::uint8_t> cells,
                                        std::span<const std::uint8_t> mask) {
  const std::size_t n = cells.size();
  const __m256i zero = _mm256_setzero_si256();
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i c = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(cells.data() + i));
    const __m256i m = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(mask.data() + i));
    // Lanes where either byte is zero.
    const __m256i either_zero =
        _mm256_or_si256(_mm256_cmpeq_epi8(c, zero), _mm256_cmpeq_epi8(m, zero));
    const auto bits = static_cast<std::uint32_t>(_mm256_movemask_epi8(either_zero));
    count += 32 - static_cast<std::size_t>(std::popcount(bits));
  }
  for (; i < n; ++i) count += (mask[i] != 0 && cells[i] != 0);
  return count;
}

EFX_AVX2 void frontier_min(std::span<const double> dist, double coeff, double eps,
                           std::span<double> h) {
  const std::size_t n = h.size();
  const __m256d veps = _mm256_set1_pd(eps);
  const __m256d vneg = _mm256_set1_pd(-coeff);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_loadu_pd(dist.data() + i);
    // max_pd(d, eps) yields d > eps ? d : eps, matching the scalar select.
    const __m256d v = _mm256_div_pd(vneg, _mm256_max_pd(d, veps));
    const __m256d cur = _mm256_loadu_pd(h.data() + i);
    _mm256_storeu_pd(h.data() + i, _mm256_min_pd(v, cur));
  }
  for (; i < n; ++i) {
    const double d = dist[i] > eps ? dist[i] : eps;
    const double v = -coeff / d;
    h[i] = v < h[i] ? v : h[i];
  }
}

EFX_AVX2 void frontier_sum(std::span<const double> dist, double coeff, double eps,
                           std::span<double> h) {
  const std::size_t n = h.size();
  const __m256d veps = _mm256_set1_pd(eps);
  const __m256d vneg = _mm256_set1_pd(-coeff);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_loadu_pd(dist.data() + i);
    const __m256d v = _mm256_div_pd(vneg, _mm256_max_pd(d, veps));
    const __m256d cur = _mm256_loadu_pd(h.data() + i);
    _mm256_storeu_pd(h.data() + i, _mm256_add_pd(cur, v));
  }
  for (; i < n; ++i) {
    const double d = dist[i] > eps ? dist[i] : eps;
    h[i] = h[i] + -coeff / d;
  }
}

EFX_AVX2 void robot_ring(const RowGeometry& row, const RobotTerm& t, std::span<double> h) {
  const std::size_t n = h.size();
  const double dy = row.y - t.y;
  const double neg_eps = -t.epsilon;
  const __m256d vdy2 = _mm256_set1_pd(dy * dy);
  const __m256d vhalf = _mm256_set1_pd(0.5);
  const __m256d vres = _mm256_set1_pd(row.resolution);
  const __m256d vrx = _mm256_set1_pd(t.x);
  const __m256d vds = _mm256_set1_pd(t.sensor_range);
  const __m256d vneg_eps = _mm256_set1_pd(neg_eps);
  const __m256d vcoeff = _mm256_set1_pd(t.coeff);
  const __m256d vnoise = _mm256_set1_pd(t.noise);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const double c = static_cast<double>(row.first_col + static_cast<int>(k));
    const __m256d vc = _mm256_set_pd(c + 3.0, c + 2.0, c + 1.0, c);
    const __m256d cx = _mm256_mul_pd(_mm256_add_pd(vc, vhalf), vres);
    const __m256d dx = _mm256_sub_pd(cx, vrx);
    const __m256d d = _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(dx, dx), vdy2));
    const __m256d inside = _mm256_cmp_pd(d, vds, _CMP_LT_OQ);
    if (_mm256_movemask_pd(inside) == 0) continue;
    const __m256d den = _mm256_min_pd(_mm256_sub_pd(d, vds), vneg_eps);
    const __m256d term = _mm256_add_pd(_mm256_div_pd(vcoeff, den), vnoise);
    const __m256d cur = _mm256_loadu_pd(h.data() + k);
    const __m256d sum = _mm256_add_pd(cur, term);
    _mm256_storeu_pd(h.data() + k, _mm256_blendv_pd(cur, sum, inside));
  }
  for (; k < n; ++k) {
    const double cx = (static_cast<double>(row.first_col + static_cast<int>(k)) + 0.5) * row.resolution;
    const double dx = cx - t.x;
    const double d = __builtin_sqrt(dx * dx + dy * dy);
    if (d < t.sensor_range) {
      const double diff = d - t.sensor_range;
      const double den = diff < neg_eps ? diff : neg_eps;
      h[k] = h[k] + (t.coeff / den + t.noise);
    }
  }
}

}  // namespace

const KernelTable* avx2_table() {
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
  }();
  static const KernelTable table{"avx2", join_bytes, join_into, count_known_masked,
                                 frontier_min, frontier_sum, robot_ring};
  return supported ? &table : nullptr;
}

}  // namespace efx::kernels

#else

namespace efx::kernels {
const KernelTable* avx2_table() { return nullptr; }
}  // namespace efx::kernels

#endif
