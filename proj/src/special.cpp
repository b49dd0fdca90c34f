#include "levylab/special.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace levylab {

SignedLogGamma log_gamma(double z) {
  if (!std::isfinite(z)) throw std::domain_error("log_gamma: argument is not finite");
  if (z > 0.0) return {std::lgamma(z), 1};
  if (z == std::floor(z)) throw std::domain_error("log_gamma: pole at a nonpositive integer");
  // Gamma(z) = pi / (sin(pi z) Gamma(1 - z)), with 1 - z > 1
  const double s = std::sin(std::numbers::pi * z);
  return {std::log(std::numbers::pi) - std::log(std::abs(s)) - std::lgamma(1.0 - z), s > 0.0 ? 1 : -1};
}

double fourier_constant(double p) {
  if (!(p > -1.0)) throw std::domain_error("fourier_constant: p must exceed -1");
  if (std::fmod(p, 2.0) == 0.0) throw std::domain_error("fourier_constant: p is an even integer (pole of Gamma(-p/2))");
  const auto numerator = log_gamma(0.5 * (p + 1.0));
  const auto denominator = log_gamma(-0.5 * p);
  const double log_abs = (p + 1.0) * std::numbers::ln2 + 0.5 * std::log(std::numbers::pi) + numerator.log_abs -
                         denominator.log_abs;
  return numerator.sign * denominator.sign * std::exp(log_abs);
}

}  // namespace levylab
