#include "levylab/proof_demo.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "levylab/calculus.hpp"
#include "levylab/criterion.hpp"
#include "levylab/parallel.hpp"
#include "levylab/quadrature.hpp"
#include "levylab/report.hpp"
#include "levylab/spec_text.hpp"
#include "levylab/special.hpp"

namespace levylab {

namespace {

constexpr double kInnerRelative = 1e-7;
constexpr double kMiddleRelative = 1e-6;
constexpr double kOuterRelative = 1e-6;
constexpr double kNearPlaneDistance = 0.05;

void check_n(int n) {
  if (n < 1) throw std::invalid_argument("mollifier index n must be positive");
}

void check_demo_inputs(const NormSpec& spec, double p, int n) {
  check_n(n);
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("the demonstrator needs 0 < p < 1");
  if (auto issue = smoothness_issue(spec); !issue.empty()) throw std::invalid_argument(issue);
}

}  // namespace

double mollifier(int n, double x1) {
  check_n(n);
  const double t = x1 * n;
  return n / std::sqrt(2.0 * std::numbers::pi) * std::exp(-0.5 * t * t);
}

double mollifier_mass(int n) {
  check_n(n);
  const double half_width = 10.0 / n;
  auto result = integrate_adaptive([n](double x) { return mollifier(n, x); }, -half_width, half_width, 0.0, 1e-14);
  return result.value[0];
}

double mollifier_tail_mass(int n, double delta) {
  check_n(n);
  if (!(delta >= 0.0)) throw std::invalid_argument("delta must be nonnegative");
  auto result =
      integrate_adaptive([n](double x) { return mollifier(n, x); }, delta, delta + 10.0 / n, 0.0, 1e-13);
  return 2.0 * result.value[0];
}

double plane_gaussian(double x2, double x3) {
  return std::exp(-0.5 * (x2 * x2 + x3 * x3)) / (2.0 * std::numbers::pi);
}

LhsIntegral lhs_integral(const NormSpec& spec, double p, int n, const LhsOptions& options) {
  check_demo_inputs(spec, p, n);
  if (!(options.x1_cutoff > 0.0) || !(options.r_cutoff > 0.0) || !(options.target_rel_error > 0.0)) {
    throw std::invalid_argument("cutoffs and target error must be positive");
  }

  LhsIntegral out;
  out.n = n;
  out.options = options;
  long evaluations = 0;
  bool all_converged = true;

  const double x1_end = options.x1_cutoff / n;
  const double s_end = std::pow(options.r_cutoff, p);

  QuadratureTolerance inner_tol{0.0, kInnerRelative, options.max_intervals, 2, true};
  QuadratureTolerance middle_tol{0.0, kMiddleRelative, options.max_intervals, 2, true};
  QuadratureTolerance outer_tol{0.0, kOuterRelative, options.max_intervals, 2, true};

  // Innermost: x_1 at fixed (r, phi).
  auto x1_integral = [&](double r, double phi) {
    const double x2 = r * std::cos(phi);
    const double x3 = r * std::sin(phi);
    auto integrand = [&](double x1) {
      const auto jet = norm_jet(spec, make_vector({x1, x2, x3}));
      const double weight = mollifier(n, x1);
      const double d1 = jet.derivatives.d1;
      return std::array<double, 2>{p * (p - 1.0) * std::pow(jet.norm, p - 2.0) * d1 * d1 * weight,
                                   p * std::pow(jet.norm, p - 1.0) * jet.derivatives.d2 * weight};
    };
    auto res = integrate_adaptive<2>(integrand, 0.0, x1_end, inner_tol);
    evaluations += res.evaluations;
    all_converged = all_converged && res.converged;
    return res;
  };

  // Middle: angle in the first quadrant of the (x_2, x_3) plane.
  auto angle_integral = [&](double r) {
    auto integrand = [&](double phi) {
      auto res = x1_integral(r, phi);
      return std::array<double, 3>{res.value[0], res.value[1], res.error[0] + res.error[1]};
    };
    auto res = integrate_adaptive<3>(integrand, 0.0, 0.5 * std::numbers::pi, middle_tol);
    all_converged = all_converged && res.converged;
    return res;
  };

  // Outer: s = r^p, so r dr = s^(2/p - 1) ds / p.
  auto radial = [&](double s) {
    const double r = std::pow(s, 1.0 / p);
    const double jacobian = std::pow(s, 2.0 / p - 1.0) / p * std::exp(-0.5 * r * r) / (2.0 * std::numbers::pi);
    auto res = angle_integral(r);
    return std::array<double, 3>{jacobian * res.value[0], jacobian * res.value[1],
                                 jacobian * (res.value[2] + res.error[0] + res.error[1])};
  };
  auto res = integrate_adaptive<3>(radial, 0.0, s_end, outer_tol);
  all_converged = all_converged && res.converged;

  // Symmetry: even in x_1 and in each of x_2, x_3.
  constexpr double kSymmetry = 8.0;
  out.first_term = kSymmetry * res.value[0];
  out.second_term = kSymmetry * res.value[1];
  CompensatedSum total;
  total.add(out.first_term);
  total.add(out.second_term);
  out.value = total.value();
  out.error = kSymmetry * (res.error[0] + res.error[1] + std::abs(res.value[2]) + res.error[2]);
  out.evaluations = evaluations;
  out.converged = all_converged &&
                  out.error <= options.target_rel_error * (std::abs(out.first_term) + std::abs(out.second_term));
  return out;
}

double rhs_prefactor(double p) {
  if (!(p > 0.0 && p < 2.0)) throw std::invalid_argument("the right-hand side needs 0 < p < 2");
  return -std::pow(2.0, 1.0 - 0.5 * p) * std::tgamma(1.0 - 0.5 * p) * fourier_constant(p) /
         (2.0 * std::numbers::pi);
}

RhsValue rhs_value(double p, int n, const SphericalMeasure& mu) {
  check_n(n);
  const double prefactor = rhs_prefactor(p);
  CompensatedSum value;
  CompensatedSum bound;
  for (const auto& atom : mu.atoms()) {
    if (atom.direction.size() != 3) throw std::invalid_argument("the right-hand side needs a measure on S^2");
    const double a = atom.direction[0] * atom.direction[0];
    if (a == 0.0) continue;
    const double base = a / (static_cast<double>(n) * n) + atom.direction[1] * atom.direction[1] +
                        atom.direction[2] * atom.direction[2];
    value.add(atom.weight * a * std::pow(base, 0.5 * (p - 2.0)));
    bound.add(atom.weight * a);
  }
  return {prefactor * value.value(), prefactor * bound.value()};
}

IdentityReport identity_check(double p, const std::vector<int>& n_list, const LhsOptions& options) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("identity_check needs 0 < p < 1");
  IdentityReport report;
  report.p = p;
  report.measure_atoms = 2048;
  const auto mu = calibrated_uniform_measure(p, report.measure_atoms);
  const auto spec = NormSpec::euclidean(3);

  report.rows.resize(n_list.size());
  parallel_for(n_list.size(), [&](std::size_t i) {
    const int n = n_list[i];
    const auto lhs = lhs_integral(spec, p, n, options);
    const auto rhs = rhs_value(p, n, mu);
    IdentityRow& row = report.rows[i];
    row.n = n;
    row.lhs = lhs.value;
    row.lhs_error = lhs.error;
    row.rhs = rhs.value;
    row.lower_bound = rhs.lower_bound;
    row.relative_gap = std::abs(lhs.value - rhs.value) / rhs.value;
    row.pass = lhs.converged && row.relative_gap <= report.tolerance;
  });
  report.pass = !report.rows.empty();
  for (const auto& row : report.rows) report.pass = report.pass && row.pass;
  return report;
}

DemoReport run_demo(const NormSpec& spec, double p, const std::vector<int>& n_list,
                    const std::optional<SphericalMeasure>& mu, const LhsOptions& options) {
  for (int n : n_list) check_demo_inputs(spec, p, n);
  DemoReport report;
  report.spec = serialize_spec(spec);
  report.p = p;
  report.rows.resize(n_list.size());
  parallel_for(n_list.size(), [&](std::size_t i) {
    DemoRow& row = report.rows[i];
    row.n = n_list[i];
    row.lhs = lhs_integral(spec, p, row.n, options);
    if (mu) row.rhs = rhs_value(p, row.n, *mu);
  });
  if (mu) report.rhs_lower_bound = rhs_value(p, 1, *mu).lower_bound;
  report.all_converged = true;
  for (const auto& row : report.rows) report.all_converged = report.all_converged && row.lhs.converged;
  return report;
}

std::string demo_csv(const DemoReport& report) {
  std::string out = "n,lhs,lhs_err,rhs,lower_bound\n";
  for (const auto& row : report.rows) {
    out += std::to_string(row.n) + "," + format_double(row.lhs.value) + "," + format_double(row.lhs.error) + ",";
    if (row.rhs) {
      out += format_double(row.rhs->value) + "," + format_double(row.rhs->lower_bound);
    } else {
      out += ",";
    }
    out += "\n";
  }
  return out;
}

std::string format_demo(const DemoReport& report) {
  std::string out;
  out += report_line("spec", report.spec);
  out += report_line("p", report.p);
  out += report_line("all_converged", report.all_converged ? "true" : "false");
  if (report.rhs_lower_bound) out += report_line("rhs_lower_bound", *report.rhs_lower_bound);
  for (const auto& row : report.rows) {
    const std::string prefix = "n=" + std::to_string(row.n) + ".";
    out += report_line(prefix + "lhs", row.lhs.value);
    out += report_line(prefix + "lhs_err", row.lhs.error);
    out += report_line(prefix + "first_term", row.lhs.first_term);
    out += report_line(prefix + "second_term", row.lhs.second_term);
    out += report_line(prefix + "evaluations", static_cast<double>(row.lhs.evaluations));
    if (!row.lhs.converged) out += report_line(prefix + "flag", "error estimate above target");
    if (row.rhs) {
      out += report_line(prefix + "rhs", row.rhs->value);
      out += report_line(prefix + "lower_bound", row.rhs->lower_bound);
    }
  }
  if (!report.rows.empty()) {
    const auto& o = report.rows.front().lhs.options;
    out += report_line("truncation", "|x_1| <= " + format_double(o.x1_cutoff) + "/n; |(x_2, x_3)| <= " +
                                         format_double(o.r_cutoff));
    out += report_line("target_rel_error", o.target_rel_error);
  }
  return out;
}

double near_plane_mass_fraction(const SphericalMeasure& mu, double distance) {
  const double total = mu.total_mass();
  if (!(total > 0.0)) return 0.0;
  CompensatedSum near;
  for (const auto& atom : mu.atoms()) {
    if (std::abs(atom.direction[0]) <= distance) near.add(atom.weight);
  }
  return near.value() / total;
}

ContradictionScaffold contradiction_scaffold(const NormSpec& spec, double p, int n, const SphericalMeasure& mu,
                                             const LhsOptions& options) {
  const auto lhs = lhs_integral(spec, p, n, options);
  const auto rhs = rhs_value(p, n, mu);
  const double prefactor = rhs_prefactor(p);
  ContradictionScaffold out;
  out.n = n;
  out.lhs = lhs.value;
  out.lhs_error = lhs.error;
  out.lower_bound = rhs.lower_bound;
  out.xi1_moment = rhs.lower_bound / prefactor;
  out.implied_xi1_moment = lhs.value / prefactor;
  out.near_plane_fraction = near_plane_mass_fraction(mu, kNearPlaneDistance);
  out.candidate_refuted = rhs.lower_bound > lhs.value + lhs.error;
  return out;
}

}  // namespace levylab
