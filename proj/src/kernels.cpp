#include "momentbox/kernels.hpp"

#include <cassert>
#include <cmath>

namespace momentbox::kernels {

bool has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported;
#else
  return false;
#endif
}

const char* active_isa() { return has_avx2() ? "avx2" : "scalar"; }

namespace {

// Neumaier update: s += v with running compensation c.
inline void comp_add(double& s, double& c, double v) {
  const double t = s + v;
  if (std::fabs(s) >= std::fabs(v))
    c += (s - t) + v;
  else
    c += (v - t) + s;
  s = t;
}

}  // namespace

void weighted_power_sums_scalar(const double* x, const double* w,
                                std::size_t n, int degree, double* out) {
  assert(degree >= 0 && degree <= 31);
  double sum[32] = {0.0};
  double comp[32] = {0.0};
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x[i];
    const double wi = w ? w[i] : 1.0;
    double p = 1.0;
    for (int k = 0; k <= degree; ++k) {
      comp_add(sum[k], comp[k], wi * p);
      p *= xi;
    }
  }
  for (int k = 0; k <= degree; ++k) out[k] = sum[k] + comp[k];
}

void hankel_twist_scalar(const double* y, std::size_t len, double a,
                         double* z) {
  for (std::size_t k = 0; k + 1 < len; ++k) z[k] = y[k + 1] - a * y[k];
}

void weighted_power_sums(const double* x, const double* w, std::size_t n,
                         int degree, double* out) {
#if defined(__x86_64__) || defined(_M_X64)
  if (has_avx2()) {
    weighted_power_sums_avx2(x, w, n, degree, out);
    return;
  }
#endif
  weighted_power_sums_scalar(x, w, n, degree, out);
}

void hankel_twist(const double* y, std::size_t len, double a, double* z) {
#if defined(__x86_64__) || defined(_M_X64)
  if (has_avx2()) {
    hankel_twist_avx2(y, len, a, z);
    return;
  }
#endif
  hankel_twist_scalar(y, len, a, z);
}

}  // namespace momentbox::kernels
