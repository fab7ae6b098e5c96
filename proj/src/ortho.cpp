#include "momentbox/ortho.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace momentbox {

namespace {

constexpr double kBreakdownTol = 1e-13;  // relative to beta_0 of the
                                         // normalized working sequence (= 1)

}  // namespace

Recurrence moments_to_recurrence(const MomentSequence& y, int d) {
  if (d < 1) throw std::invalid_argument("d must be >= 1");
  if (2 * d - 1 > y.max_degree())
    throw std::invalid_argument("insufficient moments: need 2d-1 <= m");

  const double mass = y.mass();
  const double c = y[1] / mass;
  const double var = y[2] / mass - c * c;
  const double cscale = std::max(1.0, std::abs(c));

  Recurrence rec;
  rec.betas.push_back(mass);
  rec.alphas.push_back(c);
  if (!(var > 1e-14 * cscale * cscale)) {
    // single atom: the recurrence terminates immediately
    rec.breakdown = 1;
    return rec;
  }
  const double s = std::sqrt(var);

  // centered, scaled, mass-normalized working moments
  const MomentSequence zs = affine_transform(y, c, s);
  std::vector<double> z(zs.values().begin(),
                        zs.values().begin() + 2 * static_cast<long>(d));
  for (double& v : z) v /= mass;

  // Chebyshev algorithm: sigma_{k,l} = <p_k, x^l>, built row by row
  const size_t width = z.size();
  std::vector<double> sig_prev(width, 0.0);
  std::vector<double> sig_cur = z;
  std::vector<double> alpha{z[1] / z[0]};
  std::vector<double> beta{z[0]};  // = 1
  int breakdown = -1;
  for (int k = 1; k < d; ++k) {
    std::vector<double> sig_new(width, 0.0);
    for (size_t l = static_cast<size_t>(k); l + static_cast<size_t>(k) < width;
         ++l)
      sig_new[l] = sig_cur[l + 1] - alpha[static_cast<size_t>(k - 1)] * sig_cur[l] -
                   beta[static_cast<size_t>(k - 1)] * sig_prev[l];
    const double num = sig_new[static_cast<size_t>(k)];
    const double den = sig_cur[static_cast<size_t>(k - 1)];
    const double bk = num / den;
    if (!(bk > kBreakdownTol)) {
      breakdown = k;
      break;
    }
    beta.push_back(bk);
    alpha.push_back(sig_new[static_cast<size_t>(k) + 1] / num -
                    sig_cur[static_cast<size_t>(k)] / den);
    sig_prev = std::move(sig_cur);
    sig_cur = std::move(sig_new);
  }

  // map back to the original frame: alpha -> c + s*alpha, beta_k -> s^2 beta_k
  rec.alphas[0] = c + s * alpha[0];
  for (size_t k = 1; k < alpha.size(); ++k) {
    rec.alphas.push_back(c + s * alpha[k]);
    rec.betas.push_back(s * s * beta[k]);
  }
  rec.breakdown = breakdown;
  return rec;
}

std::vector<double> gauss_nodes(const Recurrence& rec, int d) {
  if (d < 1) throw std::invalid_argument("d must be >= 1");
  if (rec.order() < d)
    throw std::domain_error(
        "recurrence breakdown before the requested order: the measure has " +
        std::to_string(rec.order()) + " atoms");
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < d; ++i) J(i, i) = rec.alphas[static_cast<size_t>(i)];
  for (int i = 1; i < d; ++i) {
    const double off = std::sqrt(rec.betas[static_cast<size_t>(i)]);
    J(i, i - 1) = off;
    J(i - 1, i) = off;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J, Eigen::EigenvaluesOnly);
  std::vector<double> nodes(es.eigenvalues().data(),
                            es.eigenvalues().data() + d);
  std::sort(nodes.begin(), nodes.end());
  return nodes;
}

}  // namespace momentbox
