#include "momentbox/moments.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "momentbox/kernels.hpp"

namespace momentbox {

MomentSequence::MomentSequence(std::vector<double> values, MomentSource source,
                               std::string family)
    : values_(std::move(values)), source_(source), family_(std::move(family)) {
  if (values_.size() < 2)
    throw std::invalid_argument("moment sequence needs at least y_0 and y_1");
  if (values_.size() > static_cast<size_t>(kMaxDegree) + 1)
    throw std::invalid_argument(
        "moment sequence exceeds the supported degree 31; pre-center with "
        "affine_transform instead of raising the degree");
  for (double v : values_)
    if (!std::isfinite(v))
      throw std::invalid_argument("moment sequence has a non-finite entry");
  if (!(values_[0] > 0.0))
    throw std::invalid_argument("y_0 must be positive (non-trivial measure)");
}

MarginalSet::MarginalSet(std::vector<MomentSequence> marginals)
    : marginals_(std::move(marginals)) {
  if (marginals_.empty())
    throw std::invalid_argument("marginal set needs at least one coordinate");
  const int m = marginals_[0].max_degree();
  for (const auto& y : marginals_)
    if (y.max_degree() != m)
      throw std::invalid_argument("marginals must share one truncation degree");
}

std::string Family::display() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::uniform: os << "uniform(" << p1 << "," << p2 << ")"; break;
    case Kind::beta: os << "beta(" << p1 << "," << p2 << ")"; break;
    case Kind::exponential: os << "exponential(" << p1 << ")"; break;
    case Kind::gaussian: os << "gaussian(" << p1 << "," << p2 << ")"; break;
    case Kind::dirac: os << "dirac(" << p1 << ")"; break;
    case Kind::finite_discrete: {
      os << "finite_discrete(";
      for (size_t i = 0; i < points.size(); ++i) {
        if (i) os << ",";
        os << points[i] << ":" << weights[i];
      }
      os << ")";
      break;
    }
  }
  return os.str();
}

namespace {

double parse_double(const std::string& tok) {
  size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("family parameter is not a number: " + tok);
  }
  while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos])))
    ++pos;
  if (pos != tok.size())
    throw std::invalid_argument("family parameter is not a number: " + tok);
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

Family parse_family(const std::string& text) {
  const auto open = text.find('(');
  const auto close = text.rfind(')');
  if (open == std::string::npos || close == std::string::npos || close < open ||
      close + 1 != text.size())
    throw std::invalid_argument("family must look like name(arg,...): " + text);
  const std::string name = text.substr(0, open);
  const std::string args = text.substr(open + 1, close - open - 1);
  const auto parts = split(args, ',');

  Family f;
  auto need = [&](size_t n) {
    if (parts.size() != n)
      throw std::invalid_argument("family " + name + " takes " +
                                  std::to_string(n) + " parameter(s)");
  };
  if (name == "uniform") {
    f.kind = Family::Kind::uniform;
    need(2);
    f.p1 = parse_double(parts[0]);
    f.p2 = parse_double(parts[1]);
    if (!(f.p2 > f.p1))
      throw std::invalid_argument("uniform(a,b) requires b > a");
  } else if (name == "beta") {
    f.kind = Family::Kind::beta;
    need(2);
    f.p1 = parse_double(parts[0]);
    f.p2 = parse_double(parts[1]);
    if (!(f.p1 > 0.0) || !(f.p2 > 0.0))
      throw std::invalid_argument("beta(p,q) requires p,q > 0");
  } else if (name == "exponential") {
    f.kind = Family::Kind::exponential;
    need(1);
    f.p1 = parse_double(parts[0]);
    if (!(f.p1 > 0.0))
      throw std::invalid_argument("exponential(lambda) requires lambda > 0");
  } else if (name == "gaussian") {
    f.kind = Family::Kind::gaussian;
    need(2);
    f.p1 = parse_double(parts[0]);
    f.p2 = parse_double(parts[1]);
    if (!(f.p2 >= 0.0))
      throw std::invalid_argument("gaussian(mu,sigma) requires sigma >= 0");
  } else if (name == "dirac") {
    f.kind = Family::Kind::dirac;
    need(1);
    f.p1 = parse_double(parts[0]);
  } else if (name == "finite_discrete") {
    f.kind = Family::Kind::finite_discrete;
    if (args.empty())
      throw std::invalid_argument("finite_discrete needs at least one atom");
    for (const auto& part : parts) {
      const auto colon = part.find(':');
      if (colon == std::string::npos)
        throw std::invalid_argument("finite_discrete atoms are point:weight");
      f.points.push_back(parse_double(part.substr(0, colon)));
      f.weights.push_back(parse_double(part.substr(colon + 1)));
    }
  } else {
    throw std::invalid_argument("unknown family: " + name);
  }
  return f;
}

MarginalSet moments_from_samples(const std::vector<std::vector<double>>& points,
                                 int max_degree) {
  if (points.empty()) throw std::invalid_argument("no sample points");
  if (max_degree < 1 || max_degree > MomentSequence::kMaxDegree)
    throw std::invalid_argument("max_degree must be in [1, 31]");
  const size_t dims = points[0].size();
  if (dims == 0) throw std::invalid_argument("sample points have no coordinates");
  for (const auto& p : points) {
    if (p.size() != dims)
      throw std::invalid_argument("sample points have inconsistent dimension");
    for (double v : p)
      if (!std::isfinite(v))
        throw std::invalid_argument("sample point has a non-finite coordinate");
  }

  std::vector<MomentSequence> marginals;
  marginals.reserve(dims);
  std::vector<double> column(points.size());
  for (size_t i = 0; i < dims; ++i) {
    for (size_t j = 0; j < points.size(); ++j) column[j] = points[j][i];
    std::vector<double> y(static_cast<size_t>(max_degree) + 1);
    kernels::power_sums(column.data(), column.size(), max_degree, y.data());
    marginals.emplace_back(std::move(y), MomentSource::samples);
  }
  return MarginalSet(std::move(marginals));
}

MomentSequence moments_closed_form(const Family& family, int max_degree) {
  if (max_degree < 1 || max_degree > MomentSequence::kMaxDegree)
    throw std::invalid_argument("max_degree must be in [1, 31]");
  const int m = max_degree;
  std::vector<double> y(static_cast<size_t>(m) + 1, 0.0);

  switch (family.kind) {
    case Family::Kind::uniform: {
      // y_k = (b^(k+1) - a^(k+1)) / ((k+1)(b-a))
      const double a = family.p1, b = family.p2;
      double pa = a, pb = b;
      y[0] = 1.0;
      for (int k = 1; k <= m; ++k) {
        pa *= a;
        pb *= b;
        y[k] = (pb - pa) / ((k + 1) * (b - a));
      }
      break;
    }
    case Family::Kind::beta: {
      // y_k = prod_{j<k} (p+j)/(p+q+j)
      const double p = family.p1, q = family.p2;
      y[0] = 1.0;
      for (int k = 1; k <= m; ++k) y[k] = y[k - 1] * (p + k - 1) / (p + q + k - 1);
      break;
    }
    case Family::Kind::exponential: {
      // y_k = k! / lambda^k
      const double lambda = family.p1;
      y[0] = 1.0;
      for (int k = 1; k <= m; ++k) y[k] = y[k - 1] * k / lambda;
      break;
    }
    case Family::Kind::gaussian: {
      // y_k = mu y_{k-1} + (k-1) sigma^2 y_{k-2}
      const double mu = family.p1, s2 = family.p2 * family.p2;
      y[0] = 1.0;
      y[1] = mu;
      for (int k = 2; k <= m; ++k) y[k] = mu * y[k - 1] + (k - 1) * s2 * y[k - 2];
      break;
    }
    case Family::Kind::dirac: {
      const double c = family.p1;
      y[0] = 1.0;
      for (int k = 1; k <= m; ++k) y[k] = y[k - 1] * c;
      break;
    }
    case Family::Kind::finite_discrete: {
      if (family.points.empty() || family.points.size() != family.weights.size())
        throw std::invalid_argument("finite_discrete needs matching points/weights");
      for (double w : family.weights)
        if (!(w > 0.0) || !std::isfinite(w))
          throw std::invalid_argument("finite_discrete weights must be positive");
      for (double p : family.points)
        if (!std::isfinite(p))
          throw std::invalid_argument("finite_discrete points must be finite");
      // same accumulation as moments_from_samples so that unit-weight atoms
      // reproduce sample moments exactly
      kernels::weighted_power_sums(family.points.data(), family.weights.data(),
                                   family.points.size(), m, y.data());
      break;
    }
  }
  return MomentSequence(std::move(y), MomentSource::closed_form, family.display());
}

MomentSequence affine_transform(const MomentSequence& y, double shift,
                                double scale) {
  if (!(scale > 0.0)) throw std::invalid_argument("scale must be positive");
  const int m = y.max_degree();
  std::vector<double> out(static_cast<size_t>(m) + 1, 0.0);
  double scale_pow = 1.0;  // scale^k
  for (int k = 0; k <= m; ++k) {
    // sum_j C(k,j) (-shift)^(k-j) y_j, binomial factors updated in place
    double acc = 0.0;
    double binom = 1.0;  // C(k,j) at j = k, walking j downwards
    double cpow = 1.0;   // (-shift)^(k-j)
    for (int j = k; j >= 0; --j) {
      acc += binom * cpow * y[j];
      binom = binom * j / (k - j + 1);
      cpow *= -shift;
    }
    out[static_cast<size_t>(k)] = acc / scale_pow;
    scale_pow *= scale;
  }
  return MomentSequence(std::move(out), y.source(), y.family_name());
}

ValidationReport validate(const MomentSequence& y, double tol) {
  ValidationReport rep;
  rep.max_testable_d = y.max_degree() / 2;
  for (int d = 0; d <= rep.max_testable_d; ++d) {
    Eigen::MatrixXd H(d + 1, d + 1);
    for (int i = 0; i <= d; ++i)
      for (int j = 0; j <= d; ++j) H(i, j) = y[i + j];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H,
                                                      Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues().minCoeff();
    if (lmin >= -tol) {
      rep.max_valid_d = d;
    } else {
      rep.first_violation_d = d;
      rep.violation_eigenvalue = lmin;
      break;
    }
  }
  return rep;
}

}  // namespace momentbox
