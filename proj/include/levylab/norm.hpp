#pragma once

#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace levylab {

inline constexpr int kMinDim = 2;
inline constexpr int kMaxDim = 8;

// Point of R^n, 2 <= n <= 8. Fixed capacity, no heap allocation.
using VectorN = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;

// Raised when an iterative method misses its tolerance or cap.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PowerTerm {
  double coefficient;
  double exponent;

  bool operator==(const PowerTerm&) const = default;
};

struct OrliczValidation {
  bool zero_at_origin = false;
  bool convex = false;
  bool normalized = false;
  bool theorem2_eligible = false;
  std::vector<std::string> failures;

  bool ok() const { return zero_at_origin && convex && normalized; }
};

// M(t) = sum_i a_i t^{q_i} on [0, inf), with analytic M' and M''.
class OrliczFunction {
 public:
  // Takes the coefficients as given; validate() reports whether M(1) = 1.
  explicit OrliczFunction(std::vector<PowerTerm> terms);

  // Rescales the coefficients so that M(1) = 1; the factor is kept in scale().
  static OrliczFunction normalized(std::vector<PowerTerm> terms);

  double value(double t) const;
  double d1(double t) const;
  double d2(double t) const;

  std::span<const PowerTerm> terms() const { return terms_; }
  double scale() const { return scale_; }

  // M'(0) = M''(0) = 0, i.e. every exponent with a nonzero coefficient exceeds 2.
  bool theorem2_eligible() const;

  // Smallest exponent carrying a nonzero coefficient.
  double min_exponent() const;

  // M''(t) >= 0 is sampled at 1024 points of [0, 4].
  OrliczValidation validate() const;

  bool operator==(const OrliczFunction& other) const { return terms_ == other.terms_; }

 private:
  std::vector<PowerTerm> terms_;
  double scale_ = 1.0;
};

enum class NormKind { Lq, Orlicz, Euclidean };

class NormSpec {
 public:
  // q = infinity gives the max norm.
  static NormSpec lq(double q, int dim);
  static NormSpec euclidean(int dim);
  // Throws std::invalid_argument when fn fails validation.
  static NormSpec orlicz(OrliczFunction fn, int dim);

  NormKind kind() const { return kind_; }
  int dim() const { return dim_; }
  double q() const { return q_; }
  bool is_max_norm() const { return kind_ == NormKind::Lq && q_ == std::numeric_limits<double>::infinity(); }
  const OrliczFunction& orlicz_function() const { return fn_; }

  // The Orlicz profile whose Luxemburg norm coincides with this one:
  // t^q for l_q, t^2 for Euclidean. Throws for the max norm.
  OrliczFunction smooth_profile() const;

  bool operator==(const NormSpec& other) const;

 private:
  NormSpec(NormKind kind, int dim, double q, OrliczFunction fn)
      : kind_(kind), dim_(dim), q_(q), fn_(std::move(fn)) {}

  NormKind kind_;
  int dim_;
  double q_;
  OrliczFunction fn_;
};

// Solves sum_k M(|x_k| / s) = 1 for s by bisection on [max |x_k|, sum |x_k|].
double orlicz_norm(const OrliczFunction& fn, std::span<const double> abs_coords);

double eval_norm(const NormSpec& spec, const VectorN& x);

// (x_2, x_3) on the unit circle of the plane spanned by e_2, e_3.
std::pair<double, double> subsphere_point(const NormSpec& spec, double theta);

OrliczValidation validate_orlicz(const OrliczFunction& fn);

VectorN make_vector(std::initializer_list<double> coords);
VectorN basis_vector(int dim, int index);

}  // namespace levylab
