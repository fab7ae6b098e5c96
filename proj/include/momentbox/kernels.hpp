#pragma once

#include <cstddef>

// Data-parallel inner loops shared by the ingestion and matrix-assembly
// paths. Each kernel has a scalar reference implementation and, on x86-64,
// an AVX2 variant selected at runtime; the dispatched entry points below
// pick the widest supported path. The scalar and AVX2 variants are
// equivalence-tested against each other (hankel_twist bit-exactly, the
// compensated reductions against a long-double reference).

namespace momentbox::kernels {

// True when an AVX2 variant is compiled in and the CPU reports support.
bool has_avx2();

// Name of the path the dispatched entry points take: "avx2" or "scalar".
const char* active_isa();

// out[k] = sum_i w[i] * x[i]^k for k = 0..degree.
// w == nullptr means unit weights (same rounding sequence as w[i] == 1.0).
// Accumulation is Neumaier-compensated per power; degree must be <= 31.
void weighted_power_sums_scalar(const double* x, const double* w,
                                std::size_t n, int degree, double* out);
void weighted_power_sums(const double* x, const double* w, std::size_t n,
                         int degree, double* out);

inline void power_sums(const double* x, std::size_t n, int degree,
                       double* out) {
  weighted_power_sums(x, nullptr, n, degree, out);
}

// z[k] = y[k+1] - a*y[k] for k = 0..len-2 (the degree-one Hankel symbol
// twist). No FMA contraction in any variant, so scalar and AVX2 agree
// bit for bit.
void hankel_twist_scalar(const double* y, std::size_t len, double a,
                         double* z);
void hankel_twist(const double* y, std::size_t len, double a, double* z);

#if defined(__x86_64__) || defined(_M_X64)
void weighted_power_sums_avx2(const double* x, const double* w, std::size_t n,
                              int degree, double* out);
void hankel_twist_avx2(const double* y, std::size_t len, double a, double* z);
#endif

}  // namespace momentbox::kernels
