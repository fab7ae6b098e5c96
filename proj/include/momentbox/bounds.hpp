#pragma once

#include "momentbox/moments.hpp"

namespace momentbox {

// Explicit low-order endpoint bounds from the first four moments.
// a_upper bounds the left support endpoint from above, b_lower bounds the
// right endpoint from below; for a single atom the two coincide.
struct ClosedFormBounds {
  double a_upper = 0.0;
  double b_lower = 0.0;
  // true when the quadratic-root refinement applied (discriminant
  // nonnegative and y_0 y_2 - y_1^2 above tolerance)
  bool b3_b4_applicable = false;
};

// Requires m >= 3 and y_0 + y_2 > 0.
ClosedFormBounds closed_form_bounds(const MomentSequence& y);

}  // namespace momentbox
