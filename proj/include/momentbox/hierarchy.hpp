#pragma once

#include <array>
#include <string>
#include <vector>

#include "momentbox/moments.hpp"

namespace momentbox {

enum class EndpointStatus {
  eigen_solved,
  bisection_solved,
  unbounded_trend,
  insufficient_moments,
};

const char* to_string(EndpointStatus s);

enum class SolveMethod { automatic, pencil, bisection };

struct SolveOptions {
  double tol = 1e-9;
  SolveMethod method = SolveMethod::automatic;
};

struct SolveOutcome {
  double value = 0.0;        // NaN unless the status is a solved one
  EndpointStatus status = EndpointStatus::insufficient_moments;
  double last_finite = 0.0;  // deepest finite probe when trending unbounded
};

// Level-d estimate of the support interval. Within one run the sequence is
// monotone: a_d nonincreasing, b_d nondecreasing, both converging to the
// endpoints of the smallest interval containing the support.
struct IntervalEstimate {
  int level = 0;
  double a = 0.0, b = 0.0;
  EndpointStatus a_status = EndpointStatus::insufficient_moments;
  EndpointStatus b_status = EndpointStatus::insufficient_moments;
  double a_last_finite = 0.0, b_last_finite = 0.0;
  double conditioning = 0.0;  // condition estimate of H_d(y), raw frame
};

// a_d = max { a : H_d((x-a) y) >= 0 }. Solved as the smallest generalized
// eigenvalue of the pencil (H_d(x y), H_d(y)) when H_d(y) is positive
// definite and well conditioned, otherwise by bisection on the PSD
// feasibility boundary. Both paths run on the centered/scaled sequence and
// map back. Requires 2d+1 <= m (reported via the status, not thrown).
SolveOutcome solve_lower(const MomentSequence& y, int d,
                         const SolveOptions& opts = {});

// b_d = min { b : b H_d(y) - H_d(x y) >= 0 }: largest pencil eigenvalue,
// mirrored bisection fallback.
SolveOutcome solve_upper(const MomentSequence& y, int d,
                         const SolveOptions& opts = {});

struct HierarchyResult {
  std::vector<IntervalEstimate> levels;  // d = 1..d_max
  std::vector<std::string> warnings;
};

// Runs levels 1..d_max and enforces monotonicity by clamping, warning when
// a clamp exceeds 10*tol (a numeric violation rather than roundoff).
HierarchyResult run_hierarchy(const MomentSequence& y, int d_max, double tol);

struct JointInterval {
  double a = 0.0, b = 0.0;
  double width = 0.0;  // b - a, the level-d optimum of the joint program
  EndpointStatus a_status;
  EndpointStatus b_status;
};

// The two constraints decouple over (a, b), so the joint level-d program is
// solved exactly by the two single-variable solves.
JointInterval joint_interval(const MomentSequence& y, int d, double tol);

struct BoxEstimate {
  std::vector<HierarchyResult> per_coordinate;
  int box_level = -1;  // deepest level at which every coordinate is finite
  std::vector<std::array<double, 2>> box;
};

// Per-coordinate hierarchies (dispatched in parallel, capped by
// MOMENTBOX_THREADS) assembled into the product box.
BoxEstimate bound_box(const MarginalSet& ms, int d_max, double tol);

}  // namespace momentbox
