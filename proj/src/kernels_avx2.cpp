#include "ctgl/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define CTGL_HAVE_AVX2_PATH 1
#define CTGL_AVX2 __attribute__((target("avx2")))
#endif

namespace ctgl::simd {

#ifdef CTGL_HAVE_AVX2_PATH

// Only raw loops and intrinsics in this file: inline library templates
// instantiated under target("avx2") could be merged into non-AVX2 callers.
namespace {

CTGL_AVX2 void add_rows_avx2(const double* weights, std::size_t n, const NeuronId* rows,
                             std::size_t nrows, double* acc) {
  for (std::size_t r = 0; r < nrows; ++r) {
    const double* row = weights + static_cast<std::size_t>(rows[r]) * n;
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
      const __m256d a = _mm256_loadu_pd(acc + k);
      _mm256_storeu_pd(acc + k, _mm256_add_pd(a, _mm256_loadu_pd(row + k)));
    }
    for (; k < n; ++k) acc[k] += row[k];
  }
}

CTGL_AVX2 void rectify_reset_avx2(double* u, const std::uint8_t* fired, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d v = _mm256_max_pd(_mm256_loadu_pd(u + k), zero);
    // Lanes whose fired byte is nonzero become all-ones.
    const __m256i f = _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(
        static_cast<int>(fired[k] | (fired[k + 1] << 8) | (fired[k + 2] << 16) |
                         (static_cast<unsigned>(fired[k + 3]) << 24))));
    const __m256i is_fired = _mm256_xor_si256(_mm256_cmpeq_epi64(f, _mm256_setzero_si256()),
                                              _mm256_set1_epi64x(-1));
    _mm256_storeu_pd(u + k, _mm256_andnot_pd(_mm256_castsi256_pd(is_fired), v));
  }
  for (; k < n; ++k) {
    const double v = u[k] > 0.0 ? u[k] : 0.0;
    u[k] = fired[k] ? 0.0 : v;
  }
}

CTGL_AVX2 double min_value_avx2(const double* x, std::size_t n) {
  const double inf = __builtin_inf();
  __m256d m = _mm256_set1_pd(inf);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) m = _mm256_min_pd(_mm256_loadu_pd(x + k), m);
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, m);
  double out = inf;
  for (double v : lanes) out = v < out ? v : out;
  for (; k < n; ++k) out = x[k] < out ? x[k] : out;
  return out;
}

CTGL_AVX2 std::size_t mark_equal_avx2(const double* x, std::size_t n, double value,
                                      std::uint8_t* mask) {
  const __m256d v = _mm256_set1_pd(value);
  std::size_t count = 0;
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const int bits = _mm256_movemask_pd(_mm256_cmp_pd(_mm256_loadu_pd(x + k), v, _CMP_EQ_OQ));
    for (int l = 0; l < 4; ++l) mask[k + l] = static_cast<std::uint8_t>((bits >> l) & 1);
    count += static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(bits)));
  }
  for (; k < n; ++k) {
    mask[k] = x[k] == value ? 1 : 0;
    count += mask[k];
  }
  return count;
}

CTGL_AVX2 std::size_t mark_below_avx2(const double* u, const double* p, std::size_t n,
                                      std::uint8_t* mask) {
  std::size_t count = 0;
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const int bits = _mm256_movemask_pd(
        _mm256_cmp_pd(_mm256_loadu_pd(u + k), _mm256_loadu_pd(p + k), _CMP_LT_OQ));
    for (int l = 0; l < 4; ++l) mask[k + l] = static_cast<std::uint8_t>((bits >> l) & 1);
    count += static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(bits)));
  }
  for (; k < n; ++k) {
    mask[k] = u[k] < p[k] ? 1 : 0;
    count += mask[k];
  }
  return count;
}

CTGL_AVX2 double ks_sup_avx2(const double* c, std::size_t n) {
  const double dn = static_cast<double>(n);
  const __m256d vn = _mm256_set1_pd(dn);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d step = _mm256_set1_pd(4.0);
  __m256d idx = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
  __m256d best = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d ck = _mm256_loadu_pd(c + k);
    const __m256d lo = _mm256_sub_pd(ck, _mm256_div_pd(idx, vn));
    const __m256d hi = _mm256_sub_pd(_mm256_div_pd(_mm256_add_pd(idx, one), vn), ck);
    best = _mm256_max_pd(best, _mm256_max_pd(lo, hi));
    idx = _mm256_add_pd(idx, step);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, best);
  double out = 0.0;
  for (double v : lanes) out = v > out ? v : out;
  for (; k < n; ++k) {
    const double i = static_cast<double>(k);
    const double lo = c[k] - i / dn;
    const double hi = (i + 1.0) / dn - c[k];
    const double d = lo > hi ? lo : hi;
    out = d > out ? d : out;
  }
  return out;
}

const KernelTable kAvx2{
    Isa::Avx2,       add_rows_avx2,   rectify_reset_avx2, min_value_avx2,
    mark_equal_avx2, mark_below_avx2, ks_sup_avx2,
};

} // namespace

const KernelTable* avx2_kernels() {
  static const bool usable = __builtin_cpu_supports("avx2");
  return usable ? &kAvx2 : nullptr;
}

#else

const KernelTable* avx2_kernels() { return nullptr; }

#endif

} // namespace ctgl::simd
