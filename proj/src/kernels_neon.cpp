#include "ctgl/kernels.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>
#endif

namespace ctgl::simd {

#if defined(__aarch64__)

namespace {

void add_rows_neon(const double* weights, std::size_t n, const NeuronId* rows,
                   std::size_t nrows, double* acc) {
  for (std::size_t r = 0; r < nrows; ++r) {
    const double* row = weights + static_cast<std::size_t>(rows[r]) * n;
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) vst1q_f64(acc + k, vaddq_f64(vld1q_f64(acc + k), vld1q_f64(row + k)));
    for (; k < n; ++k) acc[k] += row[k];
  }
}

void rectify_reset_neon(double* u, const std::uint8_t* fired, std::size_t n) {
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const float64x2_t v = vld1q_f64(u + k);
    // Keep lanes with v > 0 (NaN and -0 fall through to +0), then clear fired lanes.
    const uint64x2_t positive = vcgtq_f64(v, vdupq_n_f64(0.0));
    const uint64_t f[2] = {fired[k] ? 0ull : ~0ull, fired[k + 1] ? 0ull : ~0ull};
    const uint64x2_t keep = vandq_u64(positive, vld1q_u64(f));
    vst1q_f64(u + k, vreinterpretq_f64_u64(vandq_u64(vreinterpretq_u64_f64(v), keep)));
  }
  for (; k < n; ++k) {
    const double v = u[k] > 0.0 ? u[k] : 0.0;
    u[k] = fired[k] ? 0.0 : v;
  }
}

double min_value_neon(const double* x, std::size_t n) {
  const double inf = __builtin_inf();
  double out = inf;
  std::size_t k = 0;
  if (n >= 2) {
    float64x2_t m = vdupq_n_f64(inf);
    for (; k + 2 <= n; k += 2) {
      const float64x2_t v = vld1q_f64(x + k);
      m = vbslq_f64(vcltq_f64(v, m), v, m);
    }
    const double a = vgetq_lane_f64(m, 0), b = vgetq_lane_f64(m, 1);
    out = a < out ? a : out;
    out = b < out ? b : out;
  }
  for (; k < n; ++k) out = x[k] < out ? x[k] : out;
  return out;
}

std::size_t mark_equal_neon(const double* x, std::size_t n, double value, std::uint8_t* mask) {
  const float64x2_t v = vdupq_n_f64(value);
  std::size_t count = 0, k = 0;
  for (; k + 2 <= n; k += 2) {
    const uint64x2_t eq = vceqq_f64(vld1q_f64(x + k), v);
    mask[k] = vgetq_lane_u64(eq, 0) ? 1 : 0;
    mask[k + 1] = vgetq_lane_u64(eq, 1) ? 1 : 0;
    count += mask[k] + mask[k + 1];
  }
  for (; k < n; ++k) {
    mask[k] = x[k] == value ? 1 : 0;
    count += mask[k];
  }
  return count;
}

std::size_t mark_below_neon(const double* u, const double* p, std::size_t n,
                            std::uint8_t* mask) {
  std::size_t count = 0, k = 0;
  for (; k + 2 <= n; k += 2) {
    const uint64x2_t lt = vcltq_f64(vld1q_f64(u + k), vld1q_f64(p + k));
    mask[k] = vgetq_lane_u64(lt, 0) ? 1 : 0;
    mask[k + 1] = vgetq_lane_u64(lt, 1) ? 1 : 0;
    count += mask[k] + mask[k + 1];
  }
  for (; k < n; ++k) {
    mask[k] = u[k] < p[k] ? 1 : 0;
    count += mask[k];
  }
  return count;
}

double ks_sup_neon(const double* c, std::size_t n) {
  const double dn = static_cast<double>(n);
  const float64x2_t vn = vdupq_n_f64(dn), one = vdupq_n_f64(1.0), step = vdupq_n_f64(2.0);
  const double start[2] = {0.0, 1.0};
  float64x2_t idx = vld1q_f64(start);
  float64x2_t best = vdupq_n_f64(0.0);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const float64x2_t ck = vld1q_f64(c + k);
    const float64x2_t lo = vsubq_f64(ck, vdivq_f64(idx, vn));
    const float64x2_t hi = vsubq_f64(vdivq_f64(vaddq_f64(idx, one), vn), ck);
    const float64x2_t d = vbslq_f64(vcgtq_f64(lo, hi), lo, hi);
    best = vbslq_f64(vcgtq_f64(d, best), d, best);
    idx = vaddq_f64(idx, step);
  }
  double out = 0.0;
  const double a = vgetq_lane_f64(best, 0), b = vgetq_lane_f64(best, 1);
  out = a > out ? a : out;
  out = b > out ? b : out;
  for (; k < n; ++k) {
    const double i = static_cast<double>(k);
    const double lo = c[k] - i / dn;
    const double hi = (i + 1.0) / dn - c[k];
    const double d = lo > hi ? lo : hi;
    out = d > out ? d : out;
  }
  return out;
}

const KernelTable kNeon{
    Isa::Neon,       add_rows_neon,   rectify_reset_neon, min_value_neon,
    mark_equal_neon, mark_below_neon, ks_sup_neon,
};

} // namespace

const KernelTable* neon_kernels() { return &kNeon; }

#else

const KernelTable* neon_kernels() { return nullptr; }

#endif

} // namespace ctgl::simd
