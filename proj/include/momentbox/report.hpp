#pragma once

#include <istream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "momentbox/moments.hpp"

namespace momentbox {

// Raised for malformed or inconsistent inputs (maps to CLI exit 2).
class input_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when no level of any coordinate could be solved (CLI exit 3).
class solver_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputDescriptor {
  std::string type;    // "family" | "samples" | "moments"
  std::string detail;  // family spec or file name
};

struct BoundOptions {
  int dmax = 5;
  double tol = 1e-9;
  bool certify = false;
  bool oracle = false;
};

// {"dims": n, "marginals": [[y_0..y_m], ...]}
MarginalSet read_moments_json(std::istream& in);

// one row per point, numeric columns, optional header row
MarginalSet read_samples_csv(std::istream& in, int max_degree);

// The full bounding pipeline: input PSD validation, closed-form bounds,
// per-coordinate hierarchy (parallel across coordinates), optional dual
// certificates and orthogonal-polynomial cross-checks, product box.
// Deterministic for fixed inputs and options.
nlohmann::ordered_json build_bound_report(const MarginalSet& ms,
                                          const InputDescriptor& input,
                                          const BoundOptions& opts);

// CSV projection of a bound report: coord,d,a,b,method rows; doubles are
// printed with 17 significant digits so they re-parse bit-for-bit.
std::string report_to_csv(const nlohmann::ordered_json& report);

// PSD consistency sweep per coordinate.
nlohmann::ordered_json build_validate_report(const MarginalSet& ms,
                                             const InputDescriptor& input);

}  // namespace momentbox
