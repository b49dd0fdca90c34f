#include "levylab/norm.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>

namespace levylab {

namespace {

constexpr double kOrliczEquationTol = 1e-12;
constexpr int kBisectionMaxIter = 200;
constexpr int kConvexitySamples = 1024;
constexpr double kConvexitySpan = 4.0;

void check_dim(int dim) {
  if (dim < kMinDim || dim > kMaxDim) {
    throw std::invalid_argument("dimension must be between 2 and 8, got " + std::to_string(dim));
  }
}

}  // namespace

OrliczFunction::OrliczFunction(std::vector<PowerTerm> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) {
    throw std::invalid_argument("Orlicz function needs at least one term");
  }
}

OrliczFunction OrliczFunction::normalized(std::vector<PowerTerm> terms) {
  OrliczFunction fn(std::move(terms));
  double total = 0.0;
  for (const auto& term : fn.terms_) {
    if (!std::isfinite(term.coefficient) || term.coefficient < 0.0) {
      throw std::invalid_argument("Orlicz coefficients must be finite and nonnegative");
    }
    total += term.coefficient;
  }
  if (!(total > 0.0)) {
    throw std::invalid_argument("Orlicz function vanishes identically");
  }
  if (total != 1.0) {
    fn.scale_ = 1.0 / total;
    for (auto& term : fn.terms_) term.coefficient *= fn.scale_;
  }
  return fn;
}

double OrliczFunction::value(double t) const {
  double sum = 0.0;
  for (const auto& term : terms_) sum += term.coefficient * std::pow(t, term.exponent);
  return sum;
}

double OrliczFunction::d1(double t) const {
  double sum = 0.0;
  for (const auto& [a, q] : terms_) {
    if (a == 0.0) continue;
    sum += q == 1.0 ? a : a * q * std::pow(t, q - 1.0);
  }
  return sum;
}

double OrliczFunction::d2(double t) const {
  double sum = 0.0;
  for (const auto& [a, q] : terms_) {
    if (a == 0.0 || q == 1.0) continue;
    sum += q == 2.0 ? 2.0 * a : a * q * (q - 1.0) * std::pow(t, q - 2.0);
  }
  return sum;
}

bool OrliczFunction::theorem2_eligible() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const PowerTerm& t) { return t.coefficient == 0.0 || t.exponent > 2.0; });
}

double OrliczFunction::min_exponent() const {
  double q_min = std::numeric_limits<double>::infinity();
  for (const auto& t : terms_) {
    if (t.coefficient != 0.0) q_min = std::min(q_min, t.exponent);
  }
  return q_min;
}

OrliczValidation OrliczFunction::validate() const {
  OrliczValidation report;
  bool coefficients_ok = true;
  bool any_positive = false;
  for (const auto& [a, q] : terms_) {
    if (!std::isfinite(a) || a < 0.0) {
      coefficients_ok = false;
      report.failures.push_back("coefficient " + std::to_string(a) + " is negative or not finite");
    }
    if (!std::isfinite(q) || q <= 0.0) {
      coefficients_ok = false;
      report.failures.push_back("exponent " + std::to_string(q) + " must be positive and finite");
    }
    any_positive = any_positive || a > 0.0;
  }
  if (!any_positive) report.failures.push_back("M vanishes identically, so M(t) > 0 fails for t > 0");

  report.zero_at_origin = coefficients_ok && value(0.0) == 0.0;
  if (coefficients_ok && !report.zero_at_origin) report.failures.push_back("M(0) != 0");

  report.convex = coefficients_ok && any_positive;
  if (report.convex) {
    for (int i = 0; i < kConvexitySamples; ++i) {
      const double t = kConvexitySpan * i / (kConvexitySamples - 1);
      const double m2 = d2(t);
      if (std::isnan(m2) || m2 < 0.0) {
        report.convex = false;
        std::ostringstream msg;
        msg << "M''(" << t << ") = " << m2 << " < 0, M is not convex";
        report.failures.push_back(msg.str());
        break;
      }
    }
  }

  const double at_one = value(1.0);
  report.normalized = std::abs(at_one - 1.0) <= 1e-12;
  if (!report.normalized) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "M(1) = " << at_one << " != 1, basis vectors would not be normalized";
    report.failures.push_back(msg.str());
  }
  report.theorem2_eligible = coefficients_ok && any_positive && theorem2_eligible();
  return report;
}

OrliczValidation validate_orlicz(const OrliczFunction& fn) { return fn.validate(); }

NormSpec NormSpec::lq(double q, int dim) {
  check_dim(dim);
  if (std::isnan(q) || q < 1.0) {
    throw std::invalid_argument("q must be >= 1");
  }
  return NormSpec(NormKind::Lq, dim, q, OrliczFunction({{1.0, std::isinf(q) ? 2.0 : q}}));
}

NormSpec NormSpec::euclidean(int dim) {
  check_dim(dim);
  return NormSpec(NormKind::Euclidean, dim, 2.0, OrliczFunction({{1.0, 2.0}}));
}

NormSpec NormSpec::orlicz(OrliczFunction fn, int dim) {
  check_dim(dim);
  const auto report = fn.validate();
  if (!report.ok()) {
    std::string reasons;
    for (const auto& f : report.failures) reasons += (reasons.empty() ? "" : "; ") + f;
    throw std::invalid_argument("invalid Orlicz function: " + reasons);
  }
  return NormSpec(NormKind::Orlicz, dim, 0.0, std::move(fn));
}

OrliczFunction NormSpec::smooth_profile() const {
  switch (kind_) {
    case NormKind::Euclidean:
      return OrliczFunction({{1.0, 2.0}});
    case NormKind::Lq:
      if (is_max_norm()) throw std::domain_error("the max norm has no smooth Orlicz profile");
      return OrliczFunction({{1.0, q_}});
    case NormKind::Orlicz:
      return fn_;
  }
  throw std::logic_error("unknown norm kind");
}

bool NormSpec::operator==(const NormSpec& other) const {
  if (kind_ != other.kind_ || dim_ != other.dim_) return false;
  switch (kind_) {
    case NormKind::Lq:
      return q_ == other.q_;
    case NormKind::Orlicz:
      return fn_ == other.fn_;
    case NormKind::Euclidean:
      return true;
  }
  return false;
}

double orlicz_norm(const OrliczFunction& fn, std::span<const double> abs_coords) {
  double lo = 0.0;
  double hi = 0.0;
  for (double v : abs_coords) {
    lo = std::max(lo, v);
    hi += v;
  }
  if (lo == 0.0) return 0.0;
  if (lo == hi) return lo;

  // Sum M(|x_k| / s) is decreasing in s; it is >= 1 at lo and <= 1 at hi.
  auto excess = [&](double s) {
    double sum = 0.0;
    for (double v : abs_coords) sum += fn.value(v / s);
    return sum - 1.0;
  };
  double f_lo = excess(lo);
  double f_hi = excess(hi);
  for (int iter = 0; iter < kBisectionMaxIter; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f = excess(mid);
    if (f == 0.0) return mid;
    if (f > 0.0) {
      lo = mid;
      f_lo = f;
    } else {
      hi = mid;
      f_hi = f;
    }
  }
  const bool take_lo = std::abs(f_lo) <= std::abs(f_hi);
  const double residual = take_lo ? std::abs(f_lo) : std::abs(f_hi);
  if (!(residual <= kOrliczEquationTol)) {
    throw NumericalError("Orlicz norm bisection stalled with residual " + std::to_string(residual));
  }
  return take_lo ? lo : hi;
}

double eval_norm(const NormSpec& spec, const VectorN& x) {
  if (x.size() != spec.dim()) {
    throw std::invalid_argument("vector has dimension " + std::to_string(x.size()) + ", norm expects " +
                                std::to_string(spec.dim()));
  }
  if (!x.allFinite()) throw std::invalid_argument("vector has non-finite coordinates");

  const int n = static_cast<int>(x.size());
  std::array<double, kMaxDim> abs_coords{};
  double max_abs = 0.0;
  for (int k = 0; k < n; ++k) {
    abs_coords[k] = std::abs(x[k]);
    max_abs = std::max(max_abs, abs_coords[k]);
  }
  if (max_abs == 0.0) return 0.0;

  switch (spec.kind()) {
    case NormKind::Euclidean:
      return max_abs * (x / max_abs).norm();
    case NormKind::Lq: {
      const double q = spec.q();
      if (std::isinf(q)) return max_abs;
      double sum = 0.0;
      if (q == 1.0) {
        for (int k = 0; k < n; ++k) sum += abs_coords[k];
        return sum;
      }
      if (q == 2.0) return max_abs * (x / max_abs).norm();
      for (int k = 0; k < n; ++k) sum += std::pow(abs_coords[k] / max_abs, q);
      return max_abs * std::pow(sum, 1.0 / q);
    }
    case NormKind::Orlicz:
      return orlicz_norm(spec.orlicz_function(), std::span<const double>(abs_coords.data(), n));
  }
  throw std::logic_error("unknown norm kind");
}

std::pair<double, double> subsphere_point(const NormSpec& spec, double theta) {
  if (spec.dim() != 3) throw std::invalid_argument("subsphere_point needs a three-dimensional norm");
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double len = eval_norm(spec, make_vector({0.0, c, s}));
  return {c / len, s / len};
}

VectorN make_vector(std::initializer_list<double> coords) {
  if (coords.size() > static_cast<std::size_t>(kMaxDim)) throw std::invalid_argument("too many coordinates");
  VectorN v(static_cast<Eigen::Index>(coords.size()));
  std::copy(coords.begin(), coords.end(), v.data());
  return v;
}

VectorN basis_vector(int dim, int index) {
  VectorN v = VectorN::Zero(dim);
  v[index] = 1.0;
  return v;
}

}  // namespace levylab
