#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

#include "momentbox/moments.hpp"

namespace momentbox {

// Dense real symmetric matrix. Hankel construction fills entries from one
// anti-diagonal symbol, so symmetry is exact by construction.
class SymMatrix {
 public:
  // symbol has odd length 2d+1; the result has order d+1 with
  // (i,j) = symbol[i+j].
  static SymMatrix hankel_from_symbol(std::span<const double> symbol);
  // requires an exactly symmetric input
  static SymMatrix from_dense(Eigen::MatrixXd m);

  int order() const { return static_cast<int>(m_.rows()); }
  double operator()(int i, int j) const { return m_(i, j); }
  const Eigen::MatrixXd& dense() const { return m_; }

 private:
  explicit SymMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {}
  Eigen::MatrixXd m_;
};

enum class PsdMethod { cholesky, eigen, descartes };

struct PsdVerdict {
  bool feasible = false;
  // smallest eigenvalue (eigen), smallest pivot proxy (cholesky), or the
  // worst scaled characteristic-coefficient slack (descartes)
  double margin = 0.0;
  PsdMethod method = PsdMethod::cholesky;
};

// H_d(y), order d+1, entry (i,j) = y_{i+j}. Requires 2d <= m.
SymMatrix moment_matrix(const MomentSequence& y, int d);

// Localizing matrix H_d(theta y): entry (i,j) = sum_k theta[k] y_{i+j+k}.
// Requires 2d + (theta degree) <= m. theta identically 1 reproduces the
// moment matrix.
SymMatrix localizing_matrix(const MomentSequence& y,
                            std::span<const double> theta, int d);

// Feasible iff M + tol_abs*I admits a Cholesky factorization, with
// tol_abs = tol_rel * max(1, trace/order); on Cholesky failure the verdict
// falls back to the exact eigenvalue margin.
PsdVerdict psd_check(const SymMatrix& M, double tol_rel);

// Coefficients (p_0, ..., p_{n-1}) of det(tI - M) written as
// t^n + sum_k (-1)^(n-k) p_k t^k, via the Faddeev-LeVerrier recurrence;
// p_0 = det(M). Requires order <= 16.
std::vector<double> charpoly_coefficients(const SymMatrix& M);

enum class SupportSense { lower, upper };

// Sign test on the characteristic coefficients of the twisted Hankel matrix
// (H_d((x-a) y) for lower, H_d((b-x) y) for upper): PSD iff all p_k >= 0 by
// Descartes' rule, the matrix being symmetric. Coefficients inside a narrow
// numeric ambiguity band delegate to psd_check so the two tests always
// agree. Requires 2d+1 <= m.
PsdVerdict descartes_feasible(const MomentSequence& y, double a,
                              SupportSense sense, int d, double tol_rel = 1e-8);

}  // namespace momentbox
