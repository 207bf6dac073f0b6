#include "ctgl/kernels.hpp"

#include <cstdlib>
#include <limits>
#include <string_view>

namespace ctgl::simd {

namespace {

void add_rows_scalar(const double* weights, std::size_t n, const NeuronId* rows,
                     std::size_t nrows, double* acc) {
  for (std::size_t r = 0; r < nrows; ++r) {
    const double* row = weights + static_cast<std::size_t>(rows[r]) * n;
    for (std::size_t k = 0; k < n; ++k) acc[k] += row[k];
  }
}

void rectify_reset_scalar(double* u, const std::uint8_t* fired, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    // Written to match max_pd(x, 0): NaN and -0 both become +0.
    const double v = u[k] > 0.0 ? u[k] : 0.0;
    u[k] = fired[k] ? 0.0 : v;
  }
}

double min_value_scalar(const double* x, std::size_t n) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) m = x[k] < m ? x[k] : m;
  return m;
}

std::size_t mark_equal_scalar(const double* x, std::size_t n, double value,
                              std::uint8_t* mask) {
  std::size_t count = 0;
  for (std::size_t k = 0; k < n; ++k) {
    mask[k] = x[k] == value ? 1 : 0;
    count += mask[k];
  }
  return count;
}

std::size_t mark_below_scalar(const double* u, const double* p, std::size_t n,
                              std::uint8_t* mask) {
  std::size_t count = 0;
  for (std::size_t k = 0; k < n; ++k) {
    mask[k] = u[k] < p[k] ? 1 : 0;
    count += mask[k];
  }
  return count;
}

double ks_sup_scalar(const double* c, std::size_t n) {
  const double dn = static_cast<double>(n);
  double best = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double i = static_cast<double>(k);
    const double lo = c[k] - i / dn;
    const double hi = (i + 1.0) / dn - c[k];
    const double d = lo > hi ? lo : hi;
    best = d > best ? d : best;
  }
  return best;
}

const KernelTable kScalar{
    Isa::Scalar,       add_rows_scalar,   rectify_reset_scalar, min_value_scalar,
    mark_equal_scalar, mark_below_scalar, ks_sup_scalar,
};

const KernelTable& resolve() {
  const char* forced = std::getenv("CTGL_SIMD");
  if (forced != nullptr) {
    const std::string_view want(forced);
    if (want == "scalar") return kScalar;
    if (want == "avx2" && avx2_kernels() != nullptr) return *avx2_kernels();
    if (want == "neon" && neon_kernels() != nullptr) return *neon_kernels();
  }
  if (const KernelTable* t = avx2_kernels()) return *t;
  if (const KernelTable* t = neon_kernels()) return *t;
  return kScalar;
}

} // namespace

const char* to_string(Isa isa) {
  switch (isa) {
  case Isa::Scalar: return "scalar";
  case Isa::Avx2: return "avx2";
  case Isa::Neon: return "neon";
  }
  return "unknown";
}

const KernelTable& scalar_kernels() { return kScalar; }

const KernelTable& active() {
  static const KernelTable& table = resolve();
  return table;
}

} // namespace ctgl::simd
