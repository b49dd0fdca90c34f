#pragma once

#include <optional>
#include <string>
#include <vector>

#include "levylab/levy.hpp"
#include "levylab/norm.hpp"

namespace levylab {

// h_n(x_1) = (n / sqrt(2 pi)) exp(-x_1^2 n^2 / 2)
double mollifier(int n, double x1);
// int_R h_n, by quadrature over |x_1| <= 10/n
double mollifier_mass(int n);
// int_{|x_1| > delta} h_n, by quadrature
double mollifier_tail_mass(int n, double delta);

// u(x_2, x_3) = exp(-(x_2^2 + x_3^2) / 2) / (2 pi)
double plane_gaussian(double x2, double x3);

struct LhsOptions {
  double x1_cutoff = 10.0;  // integrate |x_1| <= x1_cutoff / n
  double r_cutoff = 12.0;   // integrate |(x_2, x_3)| <= r_cutoff
  double target_rel_error = 1e-4;
  int max_intervals = 400;
};

// int_{R^3} d^2/dx_1^2 (||x||^p) h_n(x_1) u(x_2, x_3) dx, split into the two
// terms of the integrand:
//   first  = p (p - 1) ||x||^(p-2) (d1)^2   (<= 0 for p < 1)
//   second = p ||x||^(p-1) d2               (>= 0)
struct LhsIntegral {
  int n = 0;
  double value = 0.0;
  double error = 0.0;  // a-posteriori estimate, outer plus propagated inner errors
  double first_term = 0.0;
  double second_term = 0.0;
  long evaluations = 0;
  bool converged = false;  // error <= target_rel_error * (|first| + |second|)
  LhsOptions options;
};

// Tensor quadrature: adaptive Gauss-Kronrod in x_1 over [0, cutoff/n] (even
// in x_1), in the angle over [0, pi/2] (even in x_2, x_3) and in s = r^p over
// [0, r_cutoff^p], which turns the r^(p-1) dr singularity at the origin into ds / p.
// Requires dim = 3, 0 < p < 1 and a norm that is C^2 in x_1 off the plane x_1 = 0.
LhsIntegral lhs_integral(const NormSpec& spec, double p, int n, const LhsOptions& options = {});

// Positive constant -2^(1-p/2) Gamma(1-p/2) c_p / (2 pi) in front of the
// measure integral.
double rhs_prefactor(double p);

struct RhsValue {
  double value = 0.0;
  double lower_bound = 0.0;
};

// value       = prefactor * sum_j w_j xi_1^2 (xi_1^2/n^2 + xi_2^2 + xi_3^2)^((p-2)/2)
// lower_bound = prefactor * sum_j w_j xi_1^2
RhsValue rhs_value(double p, int n, const SphericalMeasure& mu);

struct IdentityRow {
  int n = 0;
  double lhs = 0.0;
  double lhs_error = 0.0;
  double rhs = 0.0;
  double lower_bound = 0.0;
  double relative_gap = 0.0;
  bool pass = false;
};

struct IdentityReport {
  double p = 0.0;
  int measure_atoms = 0;
  double tolerance = 2e-2;
  std::vector<IdentityRow> rows;
  bool pass = false;
};

// Euclidean norm of R^3 against calibrated_uniform_measure(p, 2048).
IdentityReport identity_check(double p, const std::vector<int>& n_list, const LhsOptions& options = {});

struct DemoRow {
  int n = 0;
  LhsIntegral lhs;
  std::optional<RhsValue> rhs;
};

struct DemoReport {
  std::string spec;
  double p = 0.0;
  std::vector<DemoRow> rows;
  std::optional<double> rhs_lower_bound;
  bool all_converged = false;
};

DemoReport run_demo(const NormSpec& spec, double p, const std::vector<int>& n_list,
                    const std::optional<SphericalMeasure>& mu = std::nullopt, const LhsOptions& options = {});

// Columns n,lhs,lhs_err,rhs,lower_bound; rhs fields are empty without a measure.
std::string demo_csv(const DemoReport& report);
std::string format_demo(const DemoReport& report);

// Mass fraction of mu within Euclidean distance `distance` of the plane xi_1 = 0.
double near_plane_mass_fraction(const SphericalMeasure& mu, double distance);

// Confronts a candidate measure with the left-hand side at sharpness n. An
// exact representation needs lower_bound <= lhs, i.e. sum w xi_1^2 <= lhs / prefactor.
struct ContradictionScaffold {
  int n = 0;
  double lhs = 0.0;
  double lhs_error = 0.0;
  double lower_bound = 0.0;
  double xi1_moment = 0.0;          // sum_j w_j xi_1^2
  double implied_xi1_moment = 0.0;  // lhs / prefactor
  double near_plane_fraction = 0.0; // within 0.05 of xi_1 = 0
  bool candidate_refuted = false;   // lower_bound > lhs + lhs_error
};

ContradictionScaffold contradiction_scaffold(const NormSpec& spec, double p, int n, const SphericalMeasure& mu,
                                             const LhsOptions& options = {});

}  // namespace levylab
