#include "momentbox/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "momentbox/bounds.hpp"
#include "momentbox/dual.hpp"
#include "momentbox/hierarchy.hpp"
#include "momentbox/ortho.hpp"

namespace momentbox {

using nlohmann::ordered_json;

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

ordered_json endpoint_json(double value, EndpointStatus status,
                           double last_finite, int level, bool lower) {
  switch (status) {
    case EndpointStatus::eigen_solved:
    case EndpointStatus::bisection_solved:
      return value;
    case EndpointStatus::unbounded_trend: {
      ordered_json t;
      t["trend"] = lower ? "-inf" : "+inf";
      t["last_finite"] = last_finite;
      t["level"] = level;
      return t;
    }
    case EndpointStatus::insufficient_moments:
      return nullptr;
  }
  return nullptr;
}

ordered_json certificate_json(const SosCertificate& cert) {
  ordered_json c;
  c["level"] = cert.level;
  c["endpoint"] = cert.endpoint == SupportSense::lower ? "lower" : "upper";
  c["sos_basis"] = cert.kernel_basis;
  c["objective"] = cert.objective;
  c["residual"] = cert.slack_residual;
  c["normalization"] = cert.normalization;
  c["sos_poly"] = cert.sos_poly;
  return c;
}

ordered_json coordinate_json(const MomentSequence& y, int index,
                             const HierarchyResult& hr,
                             const BoundOptions& opts) {
  ordered_json coord;
  coord["index"] = index;

  std::vector<std::string> warnings = hr.warnings;

  if (y.max_degree() >= 3) {
    const ClosedFormBounds cf = closed_form_bounds(y);
    coord["closed_form"] = {{"a_upper", cf.a_upper},
                            {"b_lower", cf.b_lower},
                            {"b3_b4_applicable", cf.b3_b4_applicable}};
  } else {
    coord["closed_form"] = nullptr;
  }

  ordered_json levels = ordered_json::array();
  for (const auto& est : hr.levels) {
    ordered_json lv;
    lv["d"] = est.level;
    lv["a"] = endpoint_json(est.a, est.a_status, est.a_last_finite, est.level,
                            true);
    lv["a_status"] = to_string(est.a_status);
    lv["b"] = endpoint_json(est.b, est.b_status, est.b_last_finite, est.level,
                            false);
    lv["b_status"] = to_string(est.b_status);
    if (std::isfinite(est.conditioning))
      lv["conditioning"] = est.conditioning;
    else
      lv["conditioning"] = nullptr;
    levels.push_back(lv);
  }
  coord["levels"] = levels;

  if (opts.certify) {
    ordered_json certs = ordered_json::array();
    for (const auto& est : hr.levels) {
      if (est.a_status == EndpointStatus::eigen_solved) {
        try {
          certs.push_back(certificate_json(extract_certificate(
              y, est.level, SupportSense::lower, est.a)));
        } catch (const certificate_error& e) {
          warnings.push_back("level " + std::to_string(est.level) +
                             " lower certificate: " + e.what());
        }
      }
      if (est.b_status == EndpointStatus::eigen_solved) {
        try {
          certs.push_back(certificate_json(extract_certificate(
              y, est.level, SupportSense::upper, est.b)));
        } catch (const certificate_error& e) {
          warnings.push_back("level " + std::to_string(est.level) +
                             " upper certificate: " + e.what());
        }
      }
    }
    coord["certificates"] = certs;
  }

  if (opts.oracle) {
    ordered_json oracle;
    const int max_order = (y.max_degree() + 1) / 2;
    const Recurrence rec = moments_to_recurrence(y, max_order);
    oracle["alphas"] = rec.alphas;
    oracle["betas"] = rec.betas;
    if (rec.breakdown >= 0)
      oracle["breakdown"] = rec.breakdown;
    else
      oracle["breakdown"] = nullptr;

    ordered_json olevels = ordered_json::array();
    for (const auto& est : hr.levels) {
      const int nodes_order = est.level + 1;
      if (rec.order() < nodes_order) break;
      const std::vector<double> nodes = gauss_nodes(rec, nodes_order);
      ordered_json ol;
      ol["d"] = est.level;
      ol["min_node"] = nodes.front();
      ol["max_node"] = nodes.back();
      if (std::isfinite(est.a)) ol["delta_a"] = std::abs(est.a - nodes.front());
      if (std::isfinite(est.b)) ol["delta_b"] = std::abs(est.b - nodes.back());
      olevels.push_back(ol);
    }
    oracle["levels"] = olevels;
    coord["oracle"] = oracle;
  }

  coord["warnings"] = warnings;
  return coord;
}

}  // namespace

MarginalSet read_moments_json(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const std::exception& e) {
    throw input_error(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("dims") || !doc.contains("marginals"))
    throw input_error("moment input must be {\"dims\": n, \"marginals\": [...]}");
  if (!doc["dims"].is_number_integer() || !doc["marginals"].is_array())
    throw input_error("dims must be an integer and marginals an array");
  const int dims = doc["dims"].get<int>();
  if (dims < 1 || doc["marginals"].size() != static_cast<size_t>(dims))
    throw input_error("dims must match the number of marginals");

  std::vector<MomentSequence> marginals;
  for (const auto& arr : doc["marginals"]) {
    if (!arr.is_array()) throw input_error("each marginal must be an array");
    std::vector<double> values;
    for (const auto& v : arr) {
      if (!v.is_number()) throw input_error("moments must be numbers");
      values.push_back(v.get<double>());
    }
    try {
      marginals.emplace_back(std::move(values));
    } catch (const std::invalid_argument& e) {
      throw input_error(e.what());
    }
  }
  try {
    return MarginalSet(std::move(marginals));
  } catch (const std::invalid_argument& e) {
    throw input_error(e.what());
  }
}

MarginalSet read_samples_csv(std::istream& in, int max_degree) {
  std::vector<std::vector<double>> points;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string trimmed = line;
    trimmed.erase(0, trimmed.find_first_not_of(" \t"));
    if (trimmed.empty()) continue;

    std::vector<double> row;
    bool numeric = true;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      cell.erase(0, cell.find_first_not_of(" \t"));
      cell.erase(cell.find_last_not_of(" \t") + 1);
      if (cell.empty()) {
        numeric = false;
        break;
      }
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end != cell.c_str() + cell.size()) {
        numeric = false;
        break;
      }
      row.push_back(v);
    }
    if (!numeric) {
      if (lineno == 1 && points.empty()) continue;  // header row
      throw input_error("non-numeric CSV cell at line " +
                        std::to_string(lineno));
    }
    points.push_back(std::move(row));
  }
  if (points.empty()) throw input_error("CSV has no sample rows");
  try {
    return moments_from_samples(points, max_degree);
  } catch (const std::invalid_argument& e) {
    throw input_error(e.what());
  }
}

nlohmann::ordered_json build_bound_report(const MarginalSet& ms,
                                          const InputDescriptor& input,
                                          const BoundOptions& opts) {
  if (opts.dmax < 1) throw input_error("dmax must be >= 1");
  if (!(opts.tol > 0.0)) throw input_error("tol must be positive");

  // a sequence whose moment matrices are not PSD has no representing
  // measure; refuse to bound it and surface the validation sweep
  for (int i = 0; i < ms.dims(); ++i) {
    const auto& y = ms.marginal(i);
    double scale = 0.0;
    for (double v : y.values()) scale = std::max(scale, std::abs(v));
    const ValidationReport rep = validate(y, 1e-10 * scale);
    if (!rep.valid()) {
      std::ostringstream os;
      os << "coordinate " << i << ": moment matrix H_" << rep.first_violation_d
         << " has eigenvalue " << rep.violation_eigenvalue
         << " < 0; no representing measure at tolerance\n"
         << build_validate_report(ms, input).dump(2);
      throw input_error(os.str());
    }
  }

  const BoxEstimate box = bound_box(ms, opts.dmax, opts.tol);

  bool any_solved = false;
  for (const auto& hr : box.per_coordinate)
    for (const auto& est : hr.levels)
      if (std::isfinite(est.a) || std::isfinite(est.b)) any_solved = true;
  if (!any_solved)
    throw solver_error("no level of any coordinate could be solved");

  ordered_json report;
  report["schema"] = 1;
  report["input"] = {{"type", input.type},
                     {"detail", input.detail},
                     {"dims", ms.dims()},
                     {"max_degree", ms.max_degree()}};
  report["options"] = {{"dmax", opts.dmax},
                       {"tol", opts.tol},
                       {"certify", opts.certify},
                       {"oracle", opts.oracle}};

  ordered_json coords = ordered_json::array();
  for (int i = 0; i < ms.dims(); ++i)
    coords.push_back(coordinate_json(ms.marginal(i), i,
                                     box.per_coordinate[static_cast<size_t>(i)],
                                     opts));
  report["coordinates"] = coords;

  if (box.box_level > 0) {
    ordered_json b;
    b["level"] = box.box_level;
    b["intervals"] = box.box;
    report["box"] = b;
  } else {
    report["box"] = nullptr;
  }
  return report;
}

std::string report_to_csv(const nlohmann::ordered_json& report) {
  std::ostringstream os;
  os << "coord,d,a,b,method\n";
  for (const auto& coord : report.at("coordinates")) {
    const int index = coord.at("index").get<int>();
    for (const auto& lv : coord.at("levels")) {
      os << index << "," << lv.at("d").get<int>() << ",";
      if (lv.at("a").is_number()) os << fmt17(lv.at("a").get<double>());
      os << ",";
      if (lv.at("b").is_number()) os << fmt17(lv.at("b").get<double>());
      os << "," << lv.at("a_status").get<std::string>() << "/"
         << lv.at("b_status").get<std::string>() << "\n";
    }
  }
  return os.str();
}

nlohmann::ordered_json build_validate_report(const MarginalSet& ms,
                                             const InputDescriptor& input) {
  ordered_json report;
  report["schema"] = 1;
  report["input"] = {{"type", input.type},
                     {"detail", input.detail},
                     {"dims", ms.dims()},
                     {"max_degree", ms.max_degree()}};
  ordered_json coords = ordered_json::array();
  for (int i = 0; i < ms.dims(); ++i) {
    const auto& y = ms.marginal(i);
    double scale = 0.0;
    for (double v : y.values()) scale = std::max(scale, std::abs(v));
    const ValidationReport rep = validate(y, 1e-10 * scale);
    ordered_json c;
    c["index"] = i;
    c["max_testable_d"] = rep.max_testable_d;
    c["valid"] = rep.valid();
    c["max_valid_d"] = rep.max_valid_d;
    if (!rep.valid()) {
      c["first_violation_d"] = rep.first_violation_d;
      c["violation_eigenvalue"] = rep.violation_eigenvalue;
    }
    coords.push_back(c);
  }
  report["coordinates"] = coords;
  return report;
}

}  // namespace momentbox
