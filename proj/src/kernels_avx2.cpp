// AVX2 variants. This translation unit is compiled with -mavx2; callers must
// gate on has_avx2() before entering.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cassert>
#include <cmath>

#include "momentbox/kernels.hpp"

namespace momentbox::kernels {

namespace {

inline void comp_add_scalar(double& s, double& c, double v) {
  const double t = s + v;
  if (std::fabs(s) >= std::fabs(v))
    c += (s - t) + v;
  else
    c += (v - t) + s;
  s = t;
}

// Per-lane Neumaier update for four independent accumulators.
inline void comp_add_lanes(__m256d& s, __m256d& c, __m256d v) {
  const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  const __m256d t = _mm256_add_pd(s, v);
  const __m256d s_big = _mm256_cmp_pd(_mm256_and_pd(s, abs_mask),
                                      _mm256_and_pd(v, abs_mask), _CMP_GE_OQ);
  const __m256d big = _mm256_blendv_pd(v, s, s_big);
  const __m256d small = _mm256_blendv_pd(s, v, s_big);
  c = _mm256_add_pd(c, _mm256_add_pd(_mm256_sub_pd(big, t), small));
  s = t;
}

}  // namespace

void weighted_power_sums_avx2(const double* x, const double* w, std::size_t n,
                              int degree, double* out) {
  assert(degree >= 0 && degree <= 31);
  __m256d vsum[32];
  __m256d vcomp[32];
  for (int k = 0; k <= degree; ++k) {
    vsum[k] = _mm256_setzero_pd();
    vcomp[k] = _mm256_setzero_pd();
  }

  const std::size_t n4 = n - n % 4;
  const __m256d ones = _mm256_set1_pd(1.0);
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d xi = _mm256_loadu_pd(x + i);
    const __m256d wi = w ? _mm256_loadu_pd(w + i) : ones;
    __m256d p = ones;
    for (int k = 0; k <= degree; ++k) {
      comp_add_lanes(vsum[k], vcomp[k], _mm256_mul_pd(wi, p));
      p = _mm256_mul_pd(p, xi);
    }
  }

  // tail points, then lane reduction, in a fixed deterministic order
  double tail_sum[32] = {0.0};
  double tail_comp[32] = {0.0};
  for (std::size_t i = n4; i < n; ++i) {
    const double xi = x[i];
    const double wi = w ? w[i] : 1.0;
    double p = 1.0;
    for (int k = 0; k <= degree; ++k) {
      comp_add_scalar(tail_sum[k], tail_comp[k], wi * p);
      p *= xi;
    }
  }

  for (int k = 0; k <= degree; ++k) {
    alignas(32) double lanes_s[4];
    alignas(32) double lanes_c[4];
    _mm256_store_pd(lanes_s, vsum[k]);
    _mm256_store_pd(lanes_c, vcomp[k]);
    double s = 0.0, c = 0.0;
    for (int l = 0; l < 4; ++l) {
      comp_add_scalar(s, c, lanes_s[l]);
      c += lanes_c[l];
    }
    comp_add_scalar(s, c, tail_sum[k]);
    c += tail_comp[k];
    out[k] = s + c;
  }
}

void hankel_twist_avx2(const double* y, std::size_t len, double a, double* z) {
  if (len == 0) return;
  const std::size_t m = len - 1;
  const __m256d va = _mm256_set1_pd(a);
  std::size_t k = 0;
  // mul+sub kept separate (no FMA) to match the scalar rounding exactly
  for (; k + 4 <= m; k += 4) {
    const __m256d hi = _mm256_loadu_pd(y + k + 1);
    const __m256d lo = _mm256_loadu_pd(y + k);
    _mm256_storeu_pd(z + k, _mm256_sub_pd(hi, _mm256_mul_pd(va, lo)));
  }
  for (; k < m; ++k) z[k] = y[k + 1] - a * y[k];
}

}  // namespace momentbox::kernels

#endif  // x86-64
