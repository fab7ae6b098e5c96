#pragma once

#include <stdexcept>
#include <vector>

#include "momentbox/hankel.hpp"
#include "momentbox/moments.hpp"

namespace momentbox {

// Optimal dual density sigma* = sum_l p_l^2, a sum of squares of degree-d
// polynomials normalized so that its integral against the measure is one.
// The square-root factors p_l span the kernel of the optimal twisted
// moment matrix; the complementary-slackness residual is the value of the
// twisted quadratic form at the factors, computed purely from moments.
struct SosCertificate {
  int level = 0;
  SupportSense endpoint = SupportSense::lower;
  std::vector<std::vector<double>> kernel_basis;  // p_l coefficients, length d+1
  double normalization = 0.0;  // sum_l <p_l, H_d(y) p_l>, forced to 1
  double objective = 0.0;      // sum_l <p_l, H_d(x y) p_l>, equals the endpoint
  double slack_residual = 0.0;
  std::vector<double> sos_poly;  // expanded sigma* coefficients, degree <= 2d
};

class certificate_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Builds the certificate attaining a solved endpoint value. Requires
// H_d(y) positive definite (throws certificate_error otherwise, e.g. for
// atomic measures) and a solved_value at the PSD feasibility boundary
// (an empty numeric kernel signals an inaccurate primal solve).
SosCertificate extract_certificate(const MomentSequence& y, int d,
                                   SupportSense endpoint, double solved_value);

// Residual of the complementary-slackness identity at solved_value,
// |sum_l <p_l, H_d((x - a) y) p_l>| (or the upper-endpoint analogue);
// stored into the certificate and returned.
double verify_slackness(SosCertificate& cert, const MomentSequence& y,
                        double solved_value);

}  // namespace momentbox
