#include "momentbox/hankel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "momentbox/kernels.hpp"

namespace momentbox {

SymMatrix SymMatrix::hankel_from_symbol(std::span<const double> symbol) {
  if (symbol.empty() || symbol.size() % 2 == 0)
    throw std::invalid_argument("hankel symbol must have odd length 2d+1");
  const int order = static_cast<int>(symbol.size() + 1) / 2;
  Eigen::MatrixXd m(order, order);
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j) m(i, j) = symbol[static_cast<size_t>(i + j)];
  return SymMatrix(std::move(m));
}

SymMatrix SymMatrix::from_dense(Eigen::MatrixXd m) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw std::invalid_argument("matrix must be square and non-empty");
  if (m != m.transpose().eval())
    throw std::invalid_argument("matrix must be exactly symmetric");
  return SymMatrix(std::move(m));
}

SymMatrix moment_matrix(const MomentSequence& y, int d) {
  if (d < 0) throw std::invalid_argument("d must be nonnegative");
  if (2 * d > y.max_degree())
    throw std::invalid_argument("insufficient moments for H_d: need 2d <= m");
  return SymMatrix::hankel_from_symbol(
      std::span<const double>(y.values().data(), static_cast<size_t>(2 * d + 1)));
}

SymMatrix localizing_matrix(const MomentSequence& y,
                            std::span<const double> theta, int d) {
  if (theta.empty()) throw std::invalid_argument("theta must be non-empty");
  const int s = static_cast<int>(theta.size()) - 1;
  if (d < 0) throw std::invalid_argument("d must be nonnegative");
  if (2 * d + s > y.max_degree())
    throw std::invalid_argument(
        "insufficient moments for localizing matrix: need 2d + deg(theta) <= m");
  std::vector<double> symbol(static_cast<size_t>(2 * d) + 1, 0.0);
  for (size_t t = 0; t < symbol.size(); ++t) {
    double acc = 0.0;
    for (int k = 0; k <= s; ++k)
      acc += theta[static_cast<size_t>(k)] * y[static_cast<int>(t) + k];
    symbol[t] = acc;
  }
  return SymMatrix::hankel_from_symbol(symbol);
}

PsdVerdict psd_check(const SymMatrix& M, double tol_rel) {
  if (tol_rel < 0.0) throw std::invalid_argument("tolerance must be >= 0");
  const int n = M.order();
  const double tol_abs = tol_rel * std::max(1.0, M.dense().trace() / n);

  Eigen::MatrixXd shifted = M.dense();
  shifted.diagonal().array() += tol_abs;
  Eigen::LLT<Eigen::MatrixXd> llt(shifted);
  if (llt.info() == Eigen::Success) {
    const double min_pivot = llt.matrixLLT().diagonal().minCoeff();
    return {true, min_pivot * min_pivot - tol_abs, PsdMethod::cholesky};
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M.dense(),
                                                    Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff();
  return {lmin >= -tol_abs, lmin, PsdMethod::eigen};
}

std::vector<double> charpoly_coefficients(const SymMatrix& M) {
  const int n = M.order();
  if (n > 16)
    throw std::domain_error("charpoly limited to order 16 for stability");
  // Faddeev-LeVerrier: c_{n-k} = -tr(M_k)/k, M_k = M (M_{k-1} + c_{n-k+1} I)
  std::vector<double> c(static_cast<size_t>(n) + 1, 0.0);
  c[static_cast<size_t>(n)] = 1.0;
  Eigen::MatrixXd Mk = M.dense();
  for (int k = 1; k <= n; ++k) {
    const double ck = -Mk.trace() / k;
    c[static_cast<size_t>(n - k)] = ck;
    if (k < n) {
      Eigen::MatrixXd shifted = Mk;
      shifted.diagonal().array() += ck;
      Mk = M.dense() * shifted;
    }
  }
  std::vector<double> p(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double sign = ((n - k) % 2 == 0) ? 1.0 : -1.0;
    p[static_cast<size_t>(k)] = sign * c[static_cast<size_t>(k)];
  }
  return p;
}

namespace {

double binomial(int n, int k) {
  double b = 1.0;
  for (int j = 1; j <= k; ++j) b = b * (n - k + j) / j;
  return b;
}

}  // namespace

PsdVerdict descartes_feasible(const MomentSequence& y, double a,
                              SupportSense sense, int d, double tol_rel) {
  if (d < 1) throw std::invalid_argument("d must be >= 1");
  if (2 * d + 1 > y.max_degree())
    throw std::invalid_argument("insufficient moments: need 2d+1 <= m");

  std::vector<double> symbol(static_cast<size_t>(2 * d) + 1);
  kernels::hankel_twist(y.values().data(), static_cast<size_t>(2 * d) + 2, a,
                        symbol.data());
  if (sense == SupportSense::upper)
    for (double& v : symbol) v = -v;  // H_d((b-x) y) = -H_d((x-b) y)
  const SymMatrix M = SymMatrix::hankel_from_symbol(symbol);
  const int n = M.order();

  // scale by a power of two so the normalization is exact
  double tau = std::max({1.0, std::abs(M.dense().trace()) / n,
                         M.dense().cwiseAbs().maxCoeff()});
  tau = std::exp2(std::ceil(std::log2(tau)));
  const SymMatrix Mn = SymMatrix::from_dense(M.dense() / tau);

  const std::vector<double> p = charpoly_coefficients(Mn);
  // Coefficients within the band are numerically ambiguous (the
  // Faddeev-LeVerrier noise floor); those instances delegate to psd_check.
  bool ambiguous = false;
  double worst_slack = std::numeric_limits<double>::infinity();
  bool decisive_negative = false;
  for (int k = 0; k < n; ++k) {
    const double band = 1e-12 * binomial(n, n - k);
    const double pk = p[static_cast<size_t>(k)];
    if (pk < -band) decisive_negative = true;
    if (std::abs(pk) <= band) ambiguous = true;
    worst_slack = std::min(worst_slack, pk / binomial(n, n - k));
  }
  if (decisive_negative) return {false, worst_slack, PsdMethod::descartes};
  if (ambiguous) return psd_check(M, tol_rel);
  return {true, worst_slack, PsdMethod::descartes};
}

}  // namespace momentbox
