#pragma once

#include <string>
#include <vector>

namespace momentbox {

enum class MomentSource { samples, closed_form, explicit_values };

// Truncated raw moment vector (y_0, ..., y_m) of a finite Borel measure on
// the real line. Moments are stored unnormalized: y_0 is the total mass.
// Construction enforces y_0 > 0, finiteness and m <= kMaxDegree; positive
// semidefiniteness of the nested moment matrices (necessary for a
// representing measure) is checked separately by validate().
class MomentSequence {
 public:
  // Degrees beyond this are numerically meaningless on raw double-precision
  // moments; callers wanting more must pre-center via affine_transform.
  static constexpr int kMaxDegree = 31;

  explicit MomentSequence(std::vector<double> values,
                          MomentSource source = MomentSource::explicit_values,
                          std::string family = {});

  int max_degree() const { return static_cast<int>(values_.size()) - 1; }
  double mass() const { return values_[0]; }
  double operator[](int k) const { return values_[static_cast<size_t>(k)]; }
  const std::vector<double>& values() const { return values_; }
  MomentSource source() const { return source_; }
  const std::string& family_name() const { return family_; }

 private:
  std::vector<double> values_;
  MomentSource source_;
  std::string family_;
};

// Per-axis moment sequences of a measure on R^n, all truncated to the same
// degree.
class MarginalSet {
 public:
  explicit MarginalSet(std::vector<MomentSequence> marginals);

  int dims() const { return static_cast<int>(marginals_.size()); }
  int max_degree() const { return marginals_[0].max_degree(); }
  const MomentSequence& marginal(int i) const {
    return marginals_[static_cast<size_t>(i)];
  }
  const std::vector<MomentSequence>& marginals() const { return marginals_; }

 private:
  std::vector<MomentSequence> marginals_;
};

// Closed-form moment families with known supports, used as fixtures and as
// CLI inputs.
struct Family {
  enum class Kind { uniform, beta, exponential, gaussian, dirac, finite_discrete };
  Kind kind = Kind::uniform;
  double p1 = 0.0;  // uniform: alpha | beta: p | exponential: lambda
                    // gaussian: mean | dirac: location
  double p2 = 0.0;  // uniform: beta  | beta: q | gaussian: sigma
  std::vector<double> points;   // finite_discrete
  std::vector<double> weights;  // finite_discrete

  std::string display() const;
};

// Parses "uniform(0,1)", "beta(2,5)", "exponential(1)", "gaussian(0,1)",
// "dirac(2)", "finite_discrete(0:1,1:1)". Throws std::invalid_argument.
Family parse_family(const std::string& text);

// Power-sum moments of the empirical (counting) measure of the points:
// marginal i gets y_k = sum_j x_{j,i}^k, so y_0 is the number of points.
MarginalSet moments_from_samples(const std::vector<std::vector<double>>& points,
                                 int max_degree);

// Exact moments of the named distribution up to max_degree.
MomentSequence moments_closed_form(const Family& family, int max_degree);

// Moments of z = (x - shift) / scale via binomial expansion. Support
// endpoints map as a' = (a - shift) / scale. Requires scale > 0.
MomentSequence affine_transform(const MomentSequence& y, double shift,
                                double scale);

// Report of the PSD sweep over nested moment matrices H_d(y), d = 0..m/2.
struct ValidationReport {
  int max_testable_d = 0;     // floor(m/2)
  int max_valid_d = -1;       // largest d with lambda_min(H_d) >= -tol
  int first_violation_d = -1; // -1 when the whole sweep is consistent
  double violation_eigenvalue = 0.0;
  bool valid() const { return first_violation_d < 0; }
};

// tol is absolute: H_d(y) >= -tol*I counts as consistent. Report-only.
ValidationReport validate(const MomentSequence& y, double tol);

}  // namespace momentbox
