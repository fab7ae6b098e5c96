#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "momentbox/kernels.hpp"

using namespace momentbox;

namespace {

// independent long-double oracle, plain summation
std::vector<double> reference_power_sums(const std::vector<double>& x,
                                         const std::vector<double>* w,
                                         int degree) {
  std::vector<long double> acc(static_cast<size_t>(degree) + 1, 0.0L);
  for (size_t i = 0; i < x.size(); ++i) {
    long double p = 1.0L;
    const long double wi = w ? (*w)[i] : 1.0L;
    for (int k = 0; k <= degree; ++k) {
      acc[static_cast<size_t>(k)] += wi * p;
      p *= x[i];
    }
  }
  std::vector<double> out(acc.size());
  for (size_t k = 0; k < acc.size(); ++k) out[k] = static_cast<double>(acc[k]);
  return out;
}

}  // namespace

TEST_CASE("power sums of {0,1} are exact") {
  const std::vector<double> x{0.0, 1.0};
  double out[4];
  kernels::power_sums(x.data(), x.size(), 3, out);
  CHECK(out[0] == 2.0);
  CHECK(out[1] == 1.0);
  CHECK(out[2] == 1.0);
  CHECK(out[3] == 1.0);
}

TEST_CASE("scalar and dispatched power sums match a long-double reference") {
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> ux(-2.0, 2.0);
  std::uniform_real_distribution<double> uw(0.1, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const size_t n = 1 + static_cast<size_t>(rng() % 500);
    std::vector<double> x(n), w(n);
    for (auto& v : x) v = ux(rng);
    for (auto& v : w) v = uw(rng);
    const int degree = 1 + static_cast<int>(rng() % 31);

    const auto ref = reference_power_sums(x, &w, degree);
    std::vector<double> scalar(ref.size()), dispatched(ref.size());
    kernels::weighted_power_sums_scalar(x.data(), w.data(), n, degree,
                                        scalar.data());
    kernels::weighted_power_sums(x.data(), w.data(), n, degree,
                                 dispatched.data());
    for (size_t k = 0; k < ref.size(); ++k) {
      const double tol = 1e-13 * std::max(1.0, std::abs(ref[k]));
      CHECK(std::abs(scalar[k] - ref[k]) <= tol);
      CHECK(std::abs(dispatched[k] - ref[k]) <= tol);
    }
  }
}

#if defined(__x86_64__) || defined(_M_X64)
TEST_CASE("avx2 variants agree with scalar" *
          doctest::skip(!kernels::has_avx2())) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> ux(-3.0, 3.0);

  SUBCASE("weighted power sums, tight relative agreement") {
    for (int trial = 0; trial < 10; ++trial) {
      const size_t n = 1 + static_cast<size_t>(rng() % 1000);
      std::vector<double> x(n);
      for (auto& v : x) v = ux(rng);
      const int degree = 1 + static_cast<int>(rng() % 31);
      std::vector<double> a(static_cast<size_t>(degree) + 1),
          b(static_cast<size_t>(degree) + 1);
      kernels::weighted_power_sums_scalar(x.data(), nullptr, n, degree,
                                          a.data());
      kernels::weighted_power_sums_avx2(x.data(), nullptr, n, degree, b.data());
      const auto ref = reference_power_sums(x, nullptr, degree);
      for (size_t k = 0; k < a.size(); ++k) {
        const double tol = 1e-13 * std::max(1.0, std::abs(ref[k]));
        CHECK(std::abs(a[k] - b[k]) <= tol);
      }
    }
  }

  SUBCASE("hankel twist is bit-identical") {
    for (int trial = 0; trial < 50; ++trial) {
      const size_t len = 1 + static_cast<size_t>(rng() % 40);
      std::vector<double> y(len);
      for (auto& v : y) v = ux(rng);
      const double a = ux(rng);
      std::vector<double> z1(len > 0 ? len - 1 : 0), z2(z1.size());
      kernels::hankel_twist_scalar(y.data(), len, a, z1.data());
      kernels::hankel_twist_avx2(y.data(), len, a, z2.data());
      for (size_t k = 0; k < z1.size(); ++k) CHECK(z1[k] == z2[k]);
    }
  }
}
#endif

TEST_CASE("compensated accumulation survives hostile cancellation") {
  // many points near 1 with an outlier; plain summation drifts at high degree
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ux(0.999, 1.001);
  std::vector<double> x(100000);
  for (auto& v : x) v = ux(rng);
  x.push_back(1e6);
  const int degree = 3;
  const auto ref = reference_power_sums(x, nullptr, degree);
  std::vector<double> got(static_cast<size_t>(degree) + 1);
  kernels::power_sums(x.data(), x.size(), degree, got.data());
  for (size_t k = 0; k < got.size(); ++k)
    CHECK(std::abs(got[k] - ref[k]) <= 1e-15 * std::abs(ref[k]));
}

TEST_CASE("twist computes y[k+1] - a*y[k]") {
  const std::vector<double> y{1.0, 0.5, 1.0 / 3.0, 0.25};
  std::vector<double> z(3);
  kernels::hankel_twist(y.data(), y.size(), 0.5, z.data());
  CHECK(z[0] == doctest::Approx(0.0));
  CHECK(z[1] == doctest::Approx(1.0 / 3.0 - 0.25));
  CHECK(z[2] == doctest::Approx(0.25 - 1.0 / 6.0));
}

TEST_CASE("dispatch reports a coherent isa") {
  const std::string isa = kernels::active_isa();
  CHECK((isa == "avx2" || isa == "scalar"));
#if defined(__x86_64__) || defined(_M_X64)
  CHECK((kernels::has_avx2() ? isa == "avx2" : isa == "scalar"));
#endif
}
