#pragma once

#include "ctgl/model.hpp"

#include <cstddef>
#include <cstdint>
#include <span>

// Data-parallel inner loops of the engines and the KS statistic. Every
// kernel has a scalar reference and optional AVX2 / NEON variants chosen
// once at runtime. Variants perform the same IEEE operations in the same
// per-element order, so their results are bit-identical to the scalar path
// and the choice of ISA never changes simulation output.
namespace ctgl::simd {

enum class Isa { Scalar, Avx2, Neon };

const char* to_string(Isa isa);

struct KernelTable {
  Isa isa = Isa::Scalar;
  // acc[k] += weights[row * n + k] for every row in rows, rows in order.
  void (*add_rows)(const double* weights, std::size_t n, const NeuronId* rows,
                   std::size_t nrows, double* acc) = nullptr;
  // u[k] = fired[k] ? 0 : max(u[k], 0).
  void (*rectify_reset)(double* u, const std::uint8_t* fired, std::size_t n) = nullptr;
  // Smallest element; +inf for an empty range.
  double (*min_value)(const double* x, std::size_t n) = nullptr;
  // mask[k] = (x[k] == value); returns the number of marks.
  std::size_t (*mark_equal)(const double* x, std::size_t n, double value,
                            std::uint8_t* mask) = nullptr;
  // mask[k] = (u[k] < p[k]); returns the number of marks.
  std::size_t (*mark_below)(const double* u, const double* p, std::size_t n,
                            std::uint8_t* mask) = nullptr;
  // max_k max(c[k] - k/n, (k+1)/n - c[k]) for model CDF values c of the
  // sorted sample.
  double (*ks_sup)(const double* c, std::size_t n) = nullptr;
};

const KernelTable& scalar_kernels();
// nullptr when the variant was not compiled in or the CPU lacks it.
const KernelTable* avx2_kernels();
const KernelTable* neon_kernels();

// Best available table, resolved on first use. The CTGL_SIMD environment
// variable (scalar | avx2 | neon) forces a choice when that ISA is usable.
const KernelTable& active();

inline void add_rows(std::span<const double> weights, std::size_t n,
                     std::span<const NeuronId> rows, std::span<double> acc) {
  active().add_rows(weights.data(), n, rows.data(), rows.size(), acc.data());
}

inline void rectify_reset(std::span<double> u, std::span<const std::uint8_t> fired) {
  active().rectify_reset(u.data(), fired.data(), u.size());
}

inline double min_value(std::span<const double> x) {
  return active().min_value(x.data(), x.size());
}

inline std::size_t mark_equal(std::span<const double> x, double value,
                              std::span<std::uint8_t> mask) {
  return active().mark_equal(x.data(), x.size(), value, mask.data());
}

inline std::size_t mark_below(std::span<const double> u, std::span<const double> p,
                              std::span<std::uint8_t> mask) {
  return active().mark_below(u.data(), p.data(), u.size(), mask.data());
}

inline double ks_sup(std::span<const double> c) { return active().ks_sup(c.data(), c.size()); }

} // namespace ctgl::simd
