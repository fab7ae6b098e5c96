#include "momentbox/dual.hpp"

#include <Eigen/Dense>

#include <cmath>

#include "momentbox/kernels.hpp"

namespace momentbox {

namespace {

Eigen::MatrixXd twist_matrix(const MomentSequence& y, int d,
                             SupportSense endpoint, double point) {
  std::vector<double> symbol(static_cast<size_t>(2 * d) + 1);
  kernels::hankel_twist(y.values().data(), static_cast<size_t>(2 * d) + 2,
                        point, symbol.data());
  if (endpoint == SupportSense::upper)
    for (double& v : symbol) v = -v;
  return SymMatrix::hankel_from_symbol(symbol).dense();
}

}  // namespace

SosCertificate extract_certificate(const MomentSequence& y, int d,
                                   SupportSense endpoint, double solved_value) {
  if (d < 1) throw std::invalid_argument("level d must be >= 1");
  if (2 * d + 1 > y.max_degree())
    throw std::invalid_argument("insufficient moments: need 2d+1 <= m");

  const Eigen::MatrixXd H = moment_matrix(y, d).dense();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esH(H, Eigen::EigenvaluesOnly);
  const double h_min = esH.eigenvalues().minCoeff();
  const double h_max = esH.eigenvalues().maxCoeff();
  if (!(h_min > 1e-12 * std::max(1.0, h_max)))
    throw certificate_error(
        "H_d(y) is not positive definite; no certificate (atomic or "
        "degenerate measure)");

  const Eigen::MatrixXd T = twist_matrix(y, d, endpoint, solved_value);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esT(T);
  const double t_max = esT.eigenvalues().maxCoeff();
  const double cutoff = std::max(1e-10, 1e-12 * t_max);

  SosCertificate cert;
  cert.level = d;
  cert.endpoint = endpoint;
  std::vector<Eigen::VectorXd> kernel;
  for (int i = 0; i < T.rows(); ++i)
    if (esT.eigenvalues()(i) <= cutoff) kernel.push_back(esT.eigenvectors().col(i));
  if (kernel.empty())
    throw certificate_error(
        "twisted moment matrix has no numeric kernel at the solved value; "
        "the primal solve is not at the feasibility boundary");

  double ssum = 0.0;
  for (const auto& v : kernel) ssum += v.dot(H * v);
  if (!(ssum > 0.0))
    throw certificate_error("kernel basis has vanishing mass against H_d(y)");
  const double inv = 1.0 / std::sqrt(ssum);

  Eigen::MatrixXd Hx(d + 1, d + 1);
  for (int i = 0; i <= d; ++i)
    for (int j = 0; j <= d; ++j) Hx(i, j) = y[i + j + 1];

  cert.normalization = 0.0;
  cert.objective = 0.0;
  cert.sos_poly.assign(static_cast<size_t>(2 * d) + 1, 0.0);
  for (const auto& v : kernel) {
    const Eigen::VectorXd p = inv * v;
    cert.kernel_basis.emplace_back(p.data(), p.data() + p.size());
    cert.normalization += p.dot(H * p);
    cert.objective += p.dot(Hx * p);
    for (int i = 0; i <= d; ++i)
      for (int j = 0; j <= d; ++j)
        cert.sos_poly[static_cast<size_t>(i + j)] += p(i) * p(j);
  }
  verify_slackness(cert, y, solved_value);
  return cert;
}

double verify_slackness(SosCertificate& cert, const MomentSequence& y,
                        double solved_value) {
  const Eigen::MatrixXd T =
      twist_matrix(y, cert.level, cert.endpoint, solved_value);
  double acc = 0.0;
  for (const auto& pv : cert.kernel_basis) {
    const Eigen::Map<const Eigen::VectorXd> p(pv.data(),
                                              static_cast<long>(pv.size()));
    acc += p.dot(T * p);
  }
  cert.slack_residual = std::abs(acc);
  return cert.slack_residual;
}

}  // namespace momentbox
