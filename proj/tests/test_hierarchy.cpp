#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "momentbox/hankel.hpp"
#include "momentbox/hierarchy.hpp"
#include "momentbox/ortho.hpp"

using namespace momentbox;
namespace mt = momentbox::testing;

TEST_CASE("uniform(0,1) level 1 in closed form") {
  const MomentSequence y = mt::uniform01(3);
  const SolveOutcome lo = solve_lower(y, 1);
  const SolveOutcome hi = solve_upper(y, 1);
  CHECK(lo.status == EndpointStatus::eigen_solved);
  CHECK(hi.status == EndpointStatus::eigen_solved);
  CHECK(lo.value ==
        doctest::Approx((1.0 - 1.0 / std::sqrt(3.0)) / 2.0).epsilon(1e-12));
  CHECK(hi.value ==
        doctest::Approx((1.0 + 1.0 / std::sqrt(3.0)) / 2.0).epsilon(1e-12));
}

TEST_CASE("dirac collapses to the atom at every level") {
  const double c = 2.0;
  const MomentSequence y = mt::dirac(c, 7);
  for (int d = 1; d <= 3; ++d) {
    CHECK(solve_lower(y, d).value == doctest::Approx(c).epsilon(1e-14));
    CHECK(solve_upper(y, d).value == doctest::Approx(c).epsilon(1e-14));
  }
  const HierarchyResult hr = run_hierarchy(y, 3, 1e-9);
  for (const auto& est : hr.levels) {
    CHECK(est.a == doctest::Approx(c).epsilon(1e-14));
    CHECK(est.b == doctest::Approx(c).epsilon(1e-14));
  }
}

TEST_CASE("two-atom counting measure {0,1} at level 1") {
  const MomentSequence y(std::vector<double>{2.0, 1.0, 1.0, 1.0});
  const SolveOutcome lo = solve_lower(y, 1);
  const SolveOutcome hi = solve_upper(y, 1);
  CHECK(lo.value == doctest::Approx(0.0));
  CHECK(hi.value == doctest::Approx(1.0));
}

TEST_CASE("uniform(0,1) strictly tightens through level 4") {
  const HierarchyResult hr = run_hierarchy(mt::uniform01(11), 4, 1e-9);
  REQUIRE(hr.levels.size() == 4);
  CHECK(hr.warnings.empty());
  for (size_t i = 1; i < hr.levels.size(); ++i) {
    CHECK(hr.levels[i].a < hr.levels[i - 1].a);
    CHECK(hr.levels[i].b > hr.levels[i - 1].b);
  }
  // level 4 reaches the extreme nodes of the 5-point Gauss-Legendre rule
  CHECK(hr.levels[3].a == doctest::Approx(0.046910077030668).epsilon(1e-9));
  CHECK(hr.levels[3].b == doctest::Approx(0.953089922969332).epsilon(1e-9));
}

TEST_CASE("gaussian(0,1) stays symmetric and keeps widening") {
  const HierarchyResult hr = run_hierarchy(mt::gaussian01(13), 5, 1e-9);
  REQUIRE(hr.levels.size() == 5);
  for (const auto& est : hr.levels) {
    CHECK(est.a_status == EndpointStatus::eigen_solved);
    CHECK(std::abs(est.a + est.b) <= 1e-7);
  }
  for (size_t i = 1; i < hr.levels.size(); ++i) {
    CHECK(hr.levels[i].a < hr.levels[i - 1].a);
    CHECK(hr.levels[i].b > hr.levels[i - 1].b);
  }
}

TEST_CASE("mean stays inside every estimate") {
  for (const char* spec :
       {"uniform(0,1)", "beta(2,5)", "exponential(1)", "gaussian(1,0.5)"}) {
    INFO(spec);
    const MomentSequence y = moments_closed_form(parse_family(spec), 11);
    const double mean = y[1] / y[0];
    const HierarchyResult hr = run_hierarchy(y, 5, 1e-9);
    for (const auto& est : hr.levels) {
      CHECK(est.a <= mean + 1e-12);
      CHECK(est.b >= mean - 1e-12);
    }
  }
}

TEST_CASE("estimates never cross the true support") {
  struct Fixture {
    const char* spec;
    double a_true, b_true;
  };
  const Fixture fixtures[] = {
      {"uniform(0,1)", 0.0, 1.0},
      {"uniform(-3,2)", -3.0, 2.0},
      {"beta(2,5)", 0.0, 1.0},
      {"finite_discrete(-1:1,0.5:2,3:1)", -1.0, 3.0},
  };
  for (const auto& f : fixtures) {
    INFO(f.spec);
    const MomentSequence y = moments_closed_form(parse_family(f.spec), 13);
    const HierarchyResult hr = run_hierarchy(y, 6, 1e-9);
    for (const auto& est : hr.levels) {
      CHECK(est.a >= f.a_true - 1e-8);
      CHECK(est.b <= f.b_true + 1e-8);
    }
  }
}

TEST_CASE("pencil and bisection agree on positive definite fixtures") {
  std::mt19937_64 rng(17);
  SolveOptions pencil;
  pencil.method = SolveMethod::pencil;
  SolveOptions bisect;
  bisect.method = SolveMethod::bisection;
  int pairs = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const int t = 3 + static_cast<int>(rng() % 4);
    const auto meas = mt::random_discrete(rng, t, -4.0, 4.0, 0.5, 0.25);
    const MomentSequence y = mt::discrete(meas.points, meas.weights, 2 * t + 1);
    // compare in the conditioning range where the pencil itself carries
    // more than 7 accurate digits; beyond it bisection is the better route
    const MomentSequence z =
        affine_transform(y, y[1] / y[0],
                         std::sqrt(y[2] / y[0] - (y[1] / y[0]) * (y[1] / y[0])));
    for (int d = 1; d <= t - 1; ++d) {
      const Eigen::MatrixXd H = moment_matrix(z, d).dense();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H,
                                                        Eigen::EigenvaluesOnly);
      if (es.eigenvalues().minCoeff() <= 0.0 ||
          es.eigenvalues().maxCoeff() / es.eigenvalues().minCoeff() > 1e7)
        continue;
      const double p = solve_lower(y, d, pencil).value;
      const double b = solve_lower(y, d, bisect).value;
      INFO("trial " << trial << " t=" << t << " d=" << d);
      CHECK(std::abs(p - b) <= 1e-7);
      const double pu = solve_upper(y, d, pencil).value;
      const double bu = solve_upper(y, d, bisect).value;
      CHECK(std::abs(pu - bu) <= 1e-7);
      ++pairs;
    }
  }
  CHECK(pairs >= 80);
}

TEST_CASE("atomic measures are recovered exactly beyond level t-1") {
  std::mt19937_64 rng(23);
  SolveOptions opts;
  opts.tol = 1e-10;
  for (int trial = 0; trial < 10; ++trial) {
    const int t = 2 + static_cast<int>(rng() % 5);
    const auto meas = mt::random_discrete(rng, t, -5.0, 5.0, 0.5, 0.2);
    const MomentSequence y = mt::discrete(meas.points, meas.weights, 17);
    for (int d = t - 1; d <= 8; ++d) {
      INFO("trial " << trial << " t=" << t << " d=" << d);
      CHECK(std::abs(solve_lower(y, d, opts).value - meas.points.front()) <=
            1e-8);
      CHECK(std::abs(solve_upper(y, d, opts).value - meas.points.back()) <=
            1e-8);
    }
  }
}

TEST_CASE("endpoints match the extreme gauss nodes of one order higher") {
  for (const char* spec :
       {"uniform(0,1)", "beta(2,5)", "gaussian(0,1)", "exponential(1)"}) {
    INFO(spec);
    const MomentSequence y = moments_closed_form(parse_family(spec), 13);
    const Recurrence rec = moments_to_recurrence(y, 7);
    for (int d = 1; d <= 6; ++d) {
      const auto nodes = gauss_nodes(rec, d + 1);
      CHECK(std::abs(solve_lower(y, d).value - nodes.front()) <= 1e-7);
      CHECK(std::abs(solve_upper(y, d).value - nodes.back()) <= 1e-7);
    }
  }
}

TEST_CASE("insufficient moments are reported, not thrown") {
  const MomentSequence y = mt::uniform01(3);
  const SolveOutcome out = solve_lower(y, 2);
  CHECK(out.status == EndpointStatus::insufficient_moments);
  CHECK(std::isnan(out.value));
}

TEST_CASE("joint interval is the pair of single-endpoint solutions") {
  SUBCASE("uniform width 1/sqrt(3) at level 1") {
    const JointInterval ji = joint_interval(mt::uniform01(3), 1, 1e-9);
    CHECK(ji.width == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
  }
  SUBCASE("dirac has width 0") {
    const JointInterval ji = joint_interval(mt::dirac(1.0, 5), 2, 1e-9);
    CHECK(ji.width == doctest::Approx(0.0));
  }
  SUBCASE("two-atom counting measure has width 1") {
    const MomentSequence y(std::vector<double>{2.0, 1.0, 1.0, 1.0});
    const JointInterval ji = joint_interval(y, 1, 1e-9);
    CHECK(ji.width == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("bound_box") {
  SUBCASE("product of uniform(0,1) and dirac(2)") {
    const MarginalSet ms(
        {mt::uniform01(5), mt::dirac(2.0, 5)});
    const BoxEstimate box = bound_box(ms, 2, 1e-9);
    REQUIRE(box.box_level == 2);
    REQUIRE(box.box.size() == 2);
    CHECK(box.box[1][0] == doctest::Approx(2.0));
    CHECK(box.box[1][1] == doctest::Approx(2.0));
    // the uniform coordinate matches its standalone solve bit for bit
    const HierarchyResult solo = run_hierarchy(mt::uniform01(5), 2, 1e-9);
    CHECK(box.per_coordinate[0].levels[1].a == solo.levels[1].a);
    CHECK(box.per_coordinate[0].levels[1].b == solo.levels[1].b);
  }
  SUBCASE("two sample points on the diagonal give the unit box") {
    const MarginalSet ms = moments_from_samples({{0.0, 0.0}, {1.0, 1.0}}, 5);
    const BoxEstimate box = bound_box(ms, 2, 1e-9);
    REQUIRE(box.box_level == 2);
    for (const auto& iv : box.box) {
      CHECK(iv[0] == doctest::Approx(0.0));
      CHECK(iv[1] == doctest::Approx(1.0));
    }
    // already exact at level 1
    CHECK(box.per_coordinate[0].levels[0].a == doctest::Approx(0.0));
    CHECK(box.per_coordinate[0].levels[0].b == doctest::Approx(1.0));
  }
  SUBCASE("one coordinate reduces to run_hierarchy") {
    const MarginalSet ms({mt::beta25(9)});
    const BoxEstimate box = bound_box(ms, 4, 1e-9);
    const HierarchyResult solo = run_hierarchy(mt::beta25(9), 4, 1e-9);
    REQUIRE(box.per_coordinate.size() == 1);
    for (size_t i = 0; i < solo.levels.size(); ++i) {
      CHECK(box.per_coordinate[0].levels[i].a == solo.levels[i].a);
      CHECK(box.per_coordinate[0].levels[i].b == solo.levels[i].b);
    }
  }
}

TEST_CASE("levels too deep for the moments degrade per level") {
  // m=7 supports d <= 3; deeper levels report insufficient moments
  const HierarchyResult hr = run_hierarchy(mt::uniform01(7), 5, 1e-9);
  REQUIRE(hr.levels.size() == 5);
  CHECK(hr.levels[2].a_status == EndpointStatus::eigen_solved);
  CHECK(hr.levels[3].a_status == EndpointStatus::insufficient_moments);
  CHECK(hr.levels[4].a_status == EndpointStatus::insufficient_moments);

  const MarginalSet ms({mt::uniform01(7)});
  const BoxEstimate box = bound_box(ms, 5, 1e-9);
  CHECK(box.box_level == 3);  // deepest level with finite endpoints
}
