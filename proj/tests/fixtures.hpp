#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "momentbox/moments.hpp"

namespace momentbox::testing {

inline MomentSequence uniform01(int m) {
  return moments_closed_form(parse_family("uniform(0,1)"), m);
}

inline MomentSequence beta25(int m) {
  return moments_closed_form(parse_family("beta(2,5)"), m);
}

inline MomentSequence gaussian01(int m) {
  return moments_closed_form(parse_family("gaussian(0,1)"), m);
}

inline MomentSequence dirac(double c, int m) {
  Family f;
  f.kind = Family::Kind::dirac;
  f.p1 = c;
  return moments_closed_form(f, m);
}

inline MomentSequence discrete(const std::vector<double>& points,
                               const std::vector<double>& weights, int m) {
  Family f;
  f.kind = Family::Kind::finite_discrete;
  f.points = points;
  f.weights = weights;
  return moments_closed_form(f, m);
}

struct DiscreteMeasure {
  std::vector<double> points;
  std::vector<double> weights;
};

// atoms in [lo, hi] with pairwise separation >= min_gap, weights in
// [w_lo, 1]; rejection-sampled so the draw count stays deterministic per rng
inline DiscreteMeasure random_discrete(std::mt19937_64& rng, int t, double lo,
                                       double hi, double min_gap,
                                       double w_lo) {
  std::uniform_real_distribution<double> upos(lo, hi);
  std::uniform_real_distribution<double> uw(w_lo, 1.0);
  DiscreteMeasure m;
  while (true) {
    std::vector<double> pts(static_cast<size_t>(t));
    for (auto& p : pts) p = upos(rng);
    std::sort(pts.begin(), pts.end());
    bool ok = true;
    for (size_t i = 1; i < pts.size(); ++i)
      if (pts[i] - pts[i - 1] < min_gap) ok = false;
    if (!ok) continue;
    m.points = std::move(pts);
    break;
  }
  m.weights.resize(static_cast<size_t>(t));
  for (auto& w : m.weights) w = uw(rng);
  return m;
}

}  // namespace momentbox::testing
