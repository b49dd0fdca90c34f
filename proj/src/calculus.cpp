#include "levylab/calculus.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace levylab {

namespace {

void check_off_axis(const VectorN& x) {
  if (x.size() < 2) throw std::invalid_argument("derivatives need dimension >= 2");
  if (!x.allFinite()) throw std::invalid_argument("vector has non-finite coordinates");
  if (x.tail(x.size() - 1).cwiseAbs().maxCoeff() == 0.0) {
    throw std::invalid_argument("derivative in x_1 needs (x_2, ..., x_n) != 0");
  }
}

}  // namespace

DerivativePair orlicz_derivatives(const OrliczFunction& fn, const VectorN& x, double norm) {
  check_off_axis(x);
  const int n = static_cast<int>(x.size());
  const double a1 = std::abs(x[0]);

  double denominator = 0.0;
  for (int k = 0; k < n; ++k) {
    const double ak = std::abs(x[k]);
    if (ak > 0.0) denominator += ak * fn.d1(ak / norm);
  }
  if (!(denominator > 0.0)) {
    throw std::logic_error("internal inconsistency: sum_k x_k M'(x_k/||x||) vanished off the x_1 axis");
  }

  const double d1 = norm * fn.d1(a1 / norm) / denominator;

  const double lead = norm - a1 * d1;
  double numerator = lead * lead * fn.d2(a1 / norm);
  for (int k = 1; k < n; ++k) {
    const double ak = std::abs(x[k]);
    if (ak > 0.0) numerator += ak * ak * d1 * d1 * fn.d2(ak / norm);
  }
  const double d2 = numerator / (norm * norm * denominator);

  return {std::copysign(d1, x[0]), d2};
}

DerivativePair orlicz_derivatives(const OrliczFunction& fn, const VectorN& x) {
  check_off_axis(x);
  std::array<double, kMaxDim> abs_coords{};
  for (int k = 0; k < x.size(); ++k) abs_coords[k] = std::abs(x[k]);
  const double norm = orlicz_norm(fn, std::span<const double>(abs_coords.data(), x.size()));
  return orlicz_derivatives(fn, x, norm);
}

double orlicz_d1(const OrliczFunction& fn, const VectorN& x) { return orlicz_derivatives(fn, x).d1; }

double orlicz_d2(const OrliczFunction& fn, const VectorN& x) { return orlicz_derivatives(fn, x).d2; }

NormJet norm_jet(const NormSpec& spec, const VectorN& x) {
  if (spec.is_max_norm()) throw std::domain_error("the max norm is not differentiable in x_1");
  check_off_axis(x);
  const double norm = eval_norm(spec, x);
  if (spec.kind() == NormKind::Orlicz) return {norm, orlicz_derivatives(spec.orlicz_function(), x, norm)};
  if (spec.kind() == NormKind::Euclidean || spec.q() == 2.0) {
    // d/dx1 |x| = x1/|x|, d2 = |x'|^2 / |x|^3
    const double rest2 = x.tail(x.size() - 1).squaredNorm();
    return {norm, {x[0] / norm, rest2 / (norm * norm * norm)}};
  }
  return {norm, orlicz_derivatives(spec.smooth_profile(), x, norm)};
}

DerivativePair norm_derivatives(const NormSpec& spec, const VectorN& x) { return norm_jet(spec, x).derivatives; }

double default_fd_step(const NormSpec& spec, const VectorN& x) {
  return std::max(1e-5, 1e-5 * eval_norm(spec, x));
}

double fd_d1(const NormSpec& spec, const VectorN& x, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  VectorN plus = x;
  VectorN minus = x;
  plus[0] += h;
  minus[0] -= h;
  return (eval_norm(spec, plus) - eval_norm(spec, minus)) / (2.0 * h);
}

double fd_d2(const NormSpec& spec, const VectorN& x, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  VectorN plus = x;
  VectorN minus = x;
  plus[0] += h;
  minus[0] -= h;
  return (eval_norm(spec, plus) - 2.0 * eval_norm(spec, x) + eval_norm(spec, minus)) / (h * h);
}

}  // namespace levylab
