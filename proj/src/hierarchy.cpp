#include "momentbox/hierarchy.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "momentbox/hankel.hpp"
#include "momentbox/kernels.hpp"

namespace momentbox {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kPencilCondLimit = 1e12;
// Feasibility tolerance for the bisection path. Loose enough that the
// structural zero eigenvalues of rank-deficient twist matrices (atomic
// measures at d >= #atoms) always classify as feasible; the secant polish
// below recovers the endpoint far inside the resulting feasibility blur.
constexpr double kBisectTolRel = 1e-10;
constexpr double kTrendMagnitude = 1e6;  // in centered/scaled units
constexpr int kMaxExpansions = 60;

struct CenteredFrame {
  double shift = 0.0;
  double scale = 1.0;
  bool single_atom = false;
  std::vector<double> z;  // centered moments, raw mass kept
};

CenteredFrame make_frame(const MomentSequence& y) {
  CenteredFrame f;
  f.shift = y[1] / y.mass();
  const double var = y[2] / y.mass() - f.shift * f.shift;
  const double cscale = std::max(1.0, std::abs(f.shift));
  if (!(var > 1e-14 * cscale * cscale)) {
    f.single_atom = true;
    return f;
  }
  f.scale = std::sqrt(var);
  f.z = affine_transform(y, f.shift, f.scale).values();
  return f;
}

double raw_conditioning(const MomentSequence& y, int d) {
  Eigen::MatrixXd H(d + 1, d + 1);
  for (int i = 0; i <= d; ++i)
    for (int j = 0; j <= d; ++j) H(i, j) = y[i + j];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H, Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff();
  const double lmax = es.eigenvalues().maxCoeff();
  if (!(lmin > 0.0)) return std::numeric_limits<double>::infinity();
  return lmax / lmin;
}

// twisted symbol H_d((x-a) z) for lower, H_d((b-x) z) for upper
SymMatrix twist_at(const std::vector<double>& z, int d, double point,
                   bool lower) {
  std::vector<double> symbol(static_cast<size_t>(2 * d) + 1);
  kernels::hankel_twist(z.data(), static_cast<size_t>(2 * d) + 2, point,
                        symbol.data());
  if (!lower)
    for (double& v : symbol) v = -v;
  return SymMatrix::hankel_from_symbol(symbol);
}

bool twist_feasible(const std::vector<double>& z, int d, double point,
                    bool lower) {
  return psd_check(twist_at(z, d, point, lower), kBisectTolRel).feasible;
}

double twist_margin(const std::vector<double>& z, int d, double point,
                    bool lower) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      twist_at(z, d, point, lower).dense(), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

// Secant polish of a bisection bracket. On the infeasible side the smallest
// eigenvalue is the crossing branch of the twist pencil: it is smooth, its
// slope is the H_d(z)-energy of the crossing eigenvector, and it cannot
// couple to the structural kernel directions (H_d(z) annihilates them), so
// a linear extrapolation to the zero of the margin locates the endpoint far
// below the feasibility-tolerance blur of the bisection itself.
double refine_endpoint(const std::vector<double>& z, int d, bool lower,
                       double feasible, double infeasible) {
  const double dir = infeasible > feasible ? 1.0 : -1.0;
  const double trace = twist_at(z, d, infeasible, lower).dense().trace();
  const double clean = 1e-9 * std::max(1.0, std::abs(trace) / (d + 1));

  double g1 = infeasible;
  double m1 = twist_margin(z, d, g1, lower);
  double step = std::max(std::abs(infeasible - feasible), 1e-9);
  int tries = 0;
  while (m1 > -clean) {
    if (++tries > 40) return feasible;
    g1 += dir * step;
    step *= 2.0;
    m1 = twist_margin(z, d, g1, lower);
  }
  const double g2 = g1 + dir * std::max(std::abs(g1 - feasible), 1e-9);
  const double m2 = twist_margin(z, d, g2, lower);
  if (!(m2 < m1)) return feasible;
  const double slope = std::abs((m2 - m1) / (g2 - g1));
  // the true endpoint lies between the certainly-infeasible probe g1 and the
  // feasible bracket end extended by the feasibility-tolerance blur (points
  // within tol_abs/slope of the boundary are declared feasible)
  const double blur =
      kBisectTolRel * std::max(1.0, std::abs(trace) / (d + 1)) / slope;
  if (blur > 1e-3 * std::max(1.0, std::abs(feasible))) return feasible;
  const double fext = feasible - dir * blur;
  const double lo = std::min(g1, fext), hi = std::max(g1, fext);

  // iterated secant on the crossing branch; the branch stays cleanly
  // resolvable down to the eigensolver noise floor, so each iteration
  // shrinks the curvature error of the previous one
  const double noise_guard =
      100.0 * std::numeric_limits<double>::epsilon() *
      std::max(1.0, std::abs(trace) / (d + 1));
  double p0 = g2, mp0 = m2, p1 = g1, mp1 = m1;
  double root = p1 - mp1 * (p1 - p0) / (mp1 - mp0);
  if (!std::isfinite(root)) return feasible;
  root = std::clamp(root, lo, hi);
  for (int it = 0; it < 3; ++it) {
    const double mr = twist_margin(z, d, root, lower);
    if (!(mr < -noise_guard)) break;   // within noise of the boundary
    if (std::abs(mr) >= std::abs(mp1)) break;  // no progress
    p0 = p1;
    mp0 = mp1;
    p1 = root;
    mp1 = mr;
    if (mp1 == mp0) break;
    const double next = p1 - mp1 * (p1 - p0) / (mp1 - mp0);
    if (!std::isfinite(next)) break;
    root = std::clamp(next, lo, hi);
  }
  return root;
}

// Bisection on the feasibility boundary in the centered frame. For the
// lower endpoint the feasible set is (-inf, a_d]; mirrored for the upper.
SolveOutcome bisect_endpoint(const CenteredFrame& f, int d, bool lower,
                             double tol) {
  const double start = f.z[1] / f.z[0];  // ~0; always bounds the endpoint
  if (twist_feasible(f.z, d, start, lower)) {
    // only a single atom at the mean reaches the bound itself
    return {f.shift + f.scale * start, EndpointStatus::bisection_solved, 0.0};
  }
  double step = 1.0;
  double probe = lower ? start - step : start + step;
  int expansions = 0;
  while (!twist_feasible(f.z, d, probe, lower)) {
    if (++expansions > kMaxExpansions || std::abs(probe) > kTrendMagnitude) {
      const double last = f.shift + f.scale * probe;
      return {kNaN, EndpointStatus::unbounded_trend, last};
    }
    step *= 2.0;
    probe = lower ? start - step : start + step;
  }
  double feasible = probe;
  double infeasible = start;
  while (std::abs(feasible - infeasible) >
         tol * std::max(1.0, std::abs(infeasible))) {
    const double mid = 0.5 * (feasible + infeasible);
    if (twist_feasible(f.z, d, mid, lower))
      feasible = mid;
    else
      infeasible = mid;
  }
  const double polished = refine_endpoint(f.z, d, lower, feasible, infeasible);
  return {f.shift + f.scale * polished, EndpointStatus::bisection_solved, 0.0};
}

SolveOutcome solve_endpoint(const MomentSequence& y, int d, bool lower,
                            const SolveOptions& opts) {
  if (d < 1) throw std::invalid_argument("level d must be >= 1");
  if (2 * d + 1 > y.max_degree())
    return {kNaN, EndpointStatus::insufficient_moments, kNaN};

  const CenteredFrame f = make_frame(y);
  if (f.single_atom) {
    // all mass at y_1/y_0: both endpoints collapse there at every level
    return {y[1] / y.mass(), EndpointStatus::bisection_solved, 0.0};
  }

  Eigen::MatrixXd Hz(d + 1, d + 1), Hxz(d + 1, d + 1);
  for (int i = 0; i <= d; ++i)
    for (int j = 0; j <= d; ++j) {
      Hz(i, j) = f.z[static_cast<size_t>(i + j)];
      Hxz(i, j) = f.z[static_cast<size_t>(i + j + 1)];
    }

  bool pencil_ok = false;
  {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Hz,
                                                      Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues().minCoeff();
    const double lmax = es.eigenvalues().maxCoeff();
    pencil_ok = lmin > 0.0 && lmax / lmin <= kPencilCondLimit;
  }

  const bool use_pencil =
      opts.method == SolveMethod::pencil ||
      (opts.method == SolveMethod::automatic && pencil_ok);
  if (use_pencil) {
    if (!pencil_ok)
      throw std::runtime_error(
          "pencil path requires a positive definite, well-conditioned H_d(y)");
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(
        Hxz, Hz, Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
    const auto& ev = ges.eigenvalues();
    const double point = lower ? ev.minCoeff() : ev.maxCoeff();
    return {f.shift + f.scale * point, EndpointStatus::eigen_solved, 0.0};
  }
  return bisect_endpoint(f, d, lower, opts.tol);
}

unsigned thread_cap(unsigned n) {
  unsigned cap = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("MOMENTBOX_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) cap = static_cast<unsigned>(v);
  }
  return std::min(cap, n);
}

}  // namespace

const char* to_string(EndpointStatus s) {
  switch (s) {
    case EndpointStatus::eigen_solved: return "eigen-solved";
    case EndpointStatus::bisection_solved: return "bisection-solved";
    case EndpointStatus::unbounded_trend: return "unbounded-trend";
    case EndpointStatus::insufficient_moments: return "insufficient-moments";
  }
  return "?";
}

SolveOutcome solve_lower(const MomentSequence& y, int d,
                         const SolveOptions& opts) {
  return solve_endpoint(y, d, true, opts);
}

SolveOutcome solve_upper(const MomentSequence& y, int d,
                         const SolveOptions& opts) {
  return solve_endpoint(y, d, false, opts);
}

HierarchyResult run_hierarchy(const MomentSequence& y, int d_max, double tol) {
  if (d_max < 1) throw std::invalid_argument("d_max must be >= 1");
  HierarchyResult out;
  SolveOptions opts;
  opts.tol = tol;

  double prev_a = kNaN, prev_b = kNaN;
  for (int d = 1; d <= d_max; ++d) {
    IntervalEstimate est;
    est.level = d;
    est.conditioning = 2 * d <= y.max_degree() ? raw_conditioning(y, d)
                                               : std::numeric_limits<double>::infinity();

    const SolveOutcome lo = solve_lower(y, d, opts);
    const SolveOutcome hi = solve_upper(y, d, opts);
    est.a = lo.value;
    est.a_status = lo.status;
    est.a_last_finite = lo.last_finite;
    est.b = hi.value;
    est.b_status = hi.status;
    est.b_last_finite = hi.last_finite;

    // monotonicity: a_d nonincreasing, b_d nondecreasing
    const double scale_a = std::max(1.0, std::abs(prev_a));
    if (std::isfinite(est.a) && std::isfinite(prev_a) && est.a > prev_a) {
      if (est.a - prev_a > 10.0 * tol * scale_a) {
        std::ostringstream os;
        os << "level " << d << ": lower endpoint clamped by "
           << (est.a - prev_a) << " to keep the sequence nonincreasing";
        out.warnings.push_back(os.str());
      }
      est.a = prev_a;
    }
    const double scale_b = std::max(1.0, std::abs(prev_b));
    if (std::isfinite(est.b) && std::isfinite(prev_b) && est.b < prev_b) {
      if (prev_b - est.b > 10.0 * tol * scale_b) {
        std::ostringstream os;
        os << "level " << d << ": upper endpoint clamped by "
           << (prev_b - est.b) << " to keep the sequence nondecreasing";
        out.warnings.push_back(os.str());
      }
      est.b = prev_b;
    }
    if (std::isfinite(est.a)) prev_a = est.a;
    if (std::isfinite(est.b)) prev_b = est.b;

    if (est.a_status == EndpointStatus::unbounded_trend)
      out.warnings.push_back("level " + std::to_string(d) +
                             ": lower endpoint trends to -inf");
    if (est.b_status == EndpointStatus::unbounded_trend)
      out.warnings.push_back("level " + std::to_string(d) +
                             ": upper endpoint trends to +inf");

    out.levels.push_back(est);
  }
  return out;
}

JointInterval joint_interval(const MomentSequence& y, int d, double tol) {
  SolveOptions opts;
  opts.tol = tol;
  const SolveOutcome lo = solve_lower(y, d, opts);
  const SolveOutcome hi = solve_upper(y, d, opts);
  JointInterval ji;
  ji.a = lo.value;
  ji.b = hi.value;
  ji.a_status = lo.status;
  ji.b_status = hi.status;
  ji.width = hi.value - lo.value;
  return ji;
}

BoxEstimate bound_box(const MarginalSet& ms, int d_max, double tol) {
  const unsigned n = static_cast<unsigned>(ms.dims());
  BoxEstimate out;
  out.per_coordinate.resize(n);

  const unsigned workers = thread_cap(n);
  if (workers <= 1) {
    for (unsigned i = 0; i < n; ++i)
      out.per_coordinate[i] = run_hierarchy(ms.marginal(static_cast<int>(i)),
                                            d_max, tol);
  } else {
    std::vector<std::thread> pool;
    std::atomic<unsigned> next{0};
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (unsigned i = next.fetch_add(1); i < n; i = next.fetch_add(1))
          out.per_coordinate[i] = run_hierarchy(ms.marginal(static_cast<int>(i)),
                                                d_max, tol);
      });
    for (auto& t : pool) t.join();
  }

  // deepest level at which every coordinate has both endpoints finite
  for (int d = d_max; d >= 1; --d) {
    bool all_finite = true;
    for (const auto& hr : out.per_coordinate) {
      const auto& est = hr.levels[static_cast<size_t>(d - 1)];
      if (!std::isfinite(est.a) || !std::isfinite(est.b)) {
        all_finite = false;
        break;
      }
    }
    if (all_finite) {
      out.box_level = d;
      break;
    }
  }
  if (out.box_level > 0)
    for (const auto& hr : out.per_coordinate) {
      const auto& est = hr.levels[static_cast<size_t>(out.box_level - 1)];
      out.box.push_back({est.a, est.b});
    }
  return out;
}

}  // namespace momentbox
