#include "momentbox/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace momentbox {

ClosedFormBounds closed_form_bounds(const MomentSequence& y) {
  if (y.max_degree() < 3)
    throw std::invalid_argument("closed-form bounds need moments through y_3");
  const double y0 = y[0], y1 = y[1], y2 = y[2], y3 = y[3];
  if (!(y0 + y2 > 0.0))
    throw std::invalid_argument("closed-form bounds need y_0 + y_2 > 0");

  ClosedFormBounds out;
  out.a_upper = std::min(y1 / y0, (y1 + y3) / (y0 + y2));
  out.b_lower = std::max(y1 / y0, (y1 + y3) / (y0 + y2));

  // the y_3/y_2 candidate only applies when y_2 is nonzero beyond noise
  const double scale = std::max(1.0, std::abs(y1) / y0);
  if (std::abs(y2) > 1e-12 * y0 * scale * scale) {
    out.a_upper = std::min(out.a_upper, y3 / y2);
    out.b_lower = std::max(out.b_lower, y3 / y2);
  }

  // quadratic refinement: roots of (y0 y2 - y1^2) t^2 - (y0 y3 - y1 y2) t
  // + (y1 y3 - y2^2); needs a positive leading coefficient (fails exactly
  // for single-atom sequences) and a nonnegative discriminant
  const double lead = y0 * y2 - y1 * y1;
  const double mid = y0 * y3 - y1 * y2;
  const double last = y1 * y3 - y2 * y2;
  const double lead_tol =
      1e-12 * std::max({std::abs(y0 * y2), y1 * y1, 1e-300});
  const double disc = mid * mid - 4.0 * lead * last;
  if (lead > lead_tol && disc >= 0.0) {
    const double sq = std::sqrt(disc);
    out.a_upper = std::min(out.a_upper, (mid - sq) / (2.0 * lead));
    out.b_lower = std::max(out.b_lower, (mid + sq) / (2.0 * lead));
    out.b3_b4_applicable = true;
  }
  return out;
}

}  // namespace momentbox
