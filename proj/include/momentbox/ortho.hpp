#pragma once

#include <vector>

#include "momentbox/moments.hpp"

namespace momentbox {

// Three-term recurrence of the monic polynomials orthogonal with respect to
// the measure behind a moment sequence:
//   p_{k+1}(x) = (x - alpha_k) p_k(x) - beta_k p_{k-1}(x),  beta_0 = y_0.
// A breakdown (beta_k collapsing to zero) means the measure has exactly
// `breakdown` atoms; the recurrence is truncated there and the order-k
// Gauss nodes are then the exact support.
struct Recurrence {
  std::vector<double> alphas;
  std::vector<double> betas;  // betas[0] = y_0
  int breakdown = -1;         // index k with beta_k <= threshold, -1 if none

  int order() const { return static_cast<int>(alphas.size()); }
};

// Chebyshev moment-to-recurrence algorithm, run on the centered and scaled
// sequence for accuracy and mapped back. Requires 2d <= m, d >= 1.
Recurrence moments_to_recurrence(const MomentSequence& y, int d);

// Zeros of the degree-d monic orthogonal polynomial: eigenvalues of the
// order-d symmetric tridiagonal Jacobi matrix (diagonal alpha, off-diagonal
// sqrt(beta)), sorted ascending. Requires rec.order() >= d >= 1.
std::vector<double> gauss_nodes(const Recurrence& rec, int d);

}  // namespace momentbox
