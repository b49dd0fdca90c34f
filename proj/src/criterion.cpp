#include "levylab/criterion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "levylab/calculus.hpp"
#include "levylab/parallel.hpp"
#include "levylab/report.hpp"
#include "levylab/spec_text.hpp"

namespace levylab {

namespace {

constexpr int kTailRadii = 8;

// Per-theta results; reduced in theta order afterwards.
struct ThetaScan {
  double d1_at_zero = 0.0;
  double d2_at_zero = 0.0;
  double scan_max = 0.0;
  double scan_argmax_x1 = 0.0;
  double tail_max = 0.0;
};

}  // namespace

std::string smoothness_issue(const NormSpec& spec) {
  if (spec.dim() != 3) {
    return "the second-derivative test needs a three-dimensional space (dim = " + std::to_string(spec.dim()) +
           "); every two-dimensional space embeds in L_p for p in (0, 1], so the test cannot hold there";
  }
  if (spec.is_max_norm()) {
    return "non-smooth norm: q = inf (max norm) has no continuous second derivative in x_1";
  }
  if (spec.kind() == NormKind::Lq && spec.q() < 2.0) {
    return "non-smooth norm: l_q with q < 2 has an unbounded second derivative at x_1 = 0";
  }
  if (spec.kind() == NormKind::Orlicz && spec.orlicz_function().min_exponent() < 2.0) {
    return "non-smooth norm: an Orlicz exponent below 2 makes M'' unbounded or M' nonzero at 0";
  }
  return {};
}

namespace {

void check_options(const CriterionOptions& o) {
  if (o.theta_count < 4) throw std::invalid_argument("theta_count must be at least 4");
  if (!(o.x1_min > 0.0) || !(o.x1_max > o.x1_min)) throw std::invalid_argument("need 0 < x1_min < x1_max");
  if (o.x1_scan_count < 2) throw std::invalid_argument("x1_scan_count must be at least 2");
  if (!(o.tol_i > 0.0) || !(o.tol_iii > 0.0)) throw std::invalid_argument("tolerances must be positive");
  if (o.decay_steps < o.min_decay_steps || o.min_decay_steps < 1 || o.max_decay_steps < o.decay_steps) {
    throw std::invalid_argument("need 1 <= min_decay_steps <= decay_steps <= max_decay_steps");
  }
  if (o.max_decay_steps > 1000) throw std::invalid_argument("max_decay_steps must not exceed 1000");
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Applies:
      return "Applies";
    case Verdict::FailsConditionI:
      return "FailsConditionI";
    case Verdict::FailsConditionII:
      return "FailsConditionII";
    case Verdict::FailsConditionIII:
      return "FailsConditionIII";
    case Verdict::NotApplicable:
      return "NotApplicable";
  }
  return "unknown";
}

CriterionReport check_theorem1(const NormSpec& spec, const CriterionOptions& options) {
  check_options(options);
  CriterionReport report;
  report.spec = serialize_spec(spec);
  report.options = options;

  if (auto reason = smoothness_issue(spec); !reason.empty()) {
    report.verdict = Verdict::NotApplicable;
    report.reason = std::move(reason);
    return report;
  }

  const int theta_count = options.theta_count;
  const int scan_count = options.x1_scan_count;
  const double log_lo = std::log(options.x1_min);
  const double log_hi = std::log(options.x1_max);

  std::vector<ThetaScan> rows(static_cast<std::size_t>(theta_count));
  parallel_for(rows.size(), [&](std::size_t j) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / theta_count;
    const auto [x2, x3] = subsphere_point(spec, theta);
    ThetaScan& row = rows[j];

    const auto at_zero = norm_derivatives(spec, make_vector({0.0, x2, x3}));
    row.d1_at_zero = std::abs(at_zero.d1);
    row.d2_at_zero = std::abs(at_zero.d2);

    // d2 is even in x_1, so x_1 > 0 suffices.
    for (int i = 0; i < scan_count; ++i) {
      const double x1 = std::exp(log_lo + (log_hi - log_lo) * i / (scan_count - 1));
      const double d2 = norm_derivatives(spec, make_vector({x1, x2, x3})).d2;
      if (!(d2 <= row.scan_max)) {
        row.scan_max = d2;
        row.scan_argmax_x1 = x1;
      }
    }

    // Beyond x1_max, d2(x1, x2, x3) = d2(1, x2/x1, x3/x1) / x1 with |(x2, x3)/x1| < 1/x1_max.
    for (int k = 1; k <= kTailRadii; ++k) {
      const double rho = std::pow(10.0, -3.0 * (kTailRadii - k) / (kTailRadii - 1)) / options.x1_max;
      const double d2 = norm_derivatives(spec, make_vector({1.0, rho * x2, rho * x3})).d2;
      row.tail_max = std::max(row.tail_max, d2 / options.x1_max);
      if (std::isnan(d2)) row.tail_max = d2;
    }

  });

  // Decay profile in chunks of decay_steps dyadic steps, extended while the
  // supremum is still above tol_iii (slow decay for exponents close to 2).
  std::vector<double> sup_decay;
  bool finite = true;
  while (static_cast<int>(sup_decay.size()) < options.max_decay_steps &&
         (sup_decay.empty() || sup_decay.back() > options.tol_iii)) {
    const int first = static_cast<int>(sup_decay.size()) + 1;
    const int last = std::min(first + options.decay_steps - 1, options.max_decay_steps);
    std::vector<std::vector<double>> chunk(static_cast<std::size_t>(theta_count));
    parallel_for(chunk.size(), [&](std::size_t j) {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / theta_count;
      const auto [x2, x3] = subsphere_point(spec, theta);
      for (int k = first; k <= last; ++k) {
        chunk[j].push_back(norm_derivatives(spec, make_vector({std::ldexp(1.0, -k), x2, x3})).d2);
      }
    });
    for (int k = first; k <= last; ++k) {
      double sup = 0.0;
      for (const auto& values : chunk) {
        const double v = values[static_cast<std::size_t>(k - first)];
        finite = finite && std::isfinite(v);
        sup = std::max(sup, v);
      }
      sup_decay.push_back(sup);
    }
  }
  for (std::size_t k = 0; k < sup_decay.size(); ++k) {
    report.decay_profile.push_back({std::ldexp(1.0, -static_cast<int>(k + 1)), sup_decay[k]});
  }

  for (int j = 0; j < theta_count; ++j) {
    const ThetaScan& row = rows[j];
    const double theta = 2.0 * std::numbers::pi * j / theta_count;
    report.cond_i_max_d1 = std::max(report.cond_i_max_d1, row.d1_at_zero);
    report.cond_i_max_d2 = std::max(report.cond_i_max_d2, row.d2_at_zero);
    if (row.scan_max > report.K_hat_scan) {
      report.K_hat_scan = row.scan_max;
      report.K_hat_witness_x1 = row.scan_argmax_x1;
      report.K_hat_witness_theta = theta;
    }
    report.K_hat_tail = std::max(report.K_hat_tail, row.tail_max);
    finite = finite && std::isfinite(row.scan_max) && std::isfinite(row.tail_max) &&
             std::isfinite(row.d1_at_zero) && std::isfinite(row.d2_at_zero);
  }

  // Witness: first theta within roundoff of the maximum, so exact ties resolve to the smallest angle.
  for (int j = 0; j < theta_count; ++j) {
    if (rows[j].d2_at_zero >= report.cond_i_max_d2 * (1.0 - 1e-12)) {
      report.cond_i_witness_theta = 2.0 * std::numbers::pi * j / theta_count;
      break;
    }
  }

  // K_hat bounds every sampled value of d2 on the tube.
  report.K_hat = std::max({report.K_hat_scan, report.K_hat_tail, report.cond_i_max_d2});
  for (const auto& point : report.decay_profile) report.K_hat = std::max(report.K_hat, point.sup_d2);
  if (!finite) report.K_hat = std::numeric_limits<double>::infinity();

  std::ostringstream why;
  if (report.cond_i_max_d1 > options.tol_i || report.cond_i_max_d2 > options.tol_i) {
    report.verdict = Verdict::FailsConditionI;
    why << "at x_1 = 0: max |d1| = " << format_double(report.cond_i_max_d1)
        << ", max d2 = " << format_double(report.cond_i_max_d2) << " (tol_i = " << format_double(options.tol_i)
        << ", witness theta = " << format_double(report.cond_i_witness_theta) << ")";
  } else if (!(report.K_hat <= options.k_bound)) {
    report.verdict = Verdict::FailsConditionII;
    why << "K_hat = " << format_double(report.K_hat) << " exceeds the bound " << format_double(options.k_bound);
  } else {
    bool monotone = true;
    for (std::size_t k = 1; k < report.decay_profile.size(); ++k) {
      monotone = monotone && report.decay_profile[k].sup_d2 <= report.decay_profile[k - 1].sup_d2;
    }
    const double last = report.decay_profile.back().sup_d2;
    if (!monotone || !(last <= options.tol_iii)) {
      report.verdict = Verdict::FailsConditionIII;
      why << "decay profile " << (monotone ? "is monotone" : "is not monotone") << ", final sup d2 = "
          << format_double(last) << " (tol_iii = " << format_double(options.tol_iii) << ")";
    } else {
      report.verdict = Verdict::Applies;
      why << "conditions (i)-(iii) hold on the sampled grids; the space does not embed isometrically in L_p, "
             "0 < p <= 2";
    }
  }
  report.reason = why.str();
  return report;
}

Theorem2Result check_theorem2(const OrliczFunction& fn) {
  Theorem2Result result;
  const auto validation = fn.validate();
  if (!validation.ok()) {
    result.reasons = validation.failures;
    return result;
  }
  const double m1 = fn.d1(0.0);
  const double m2 = fn.d2(0.0);
  if (m1 != 0.0) result.reasons.push_back("M'(0) = " + format_double(m1));
  if (std::isinf(m2)) {
    result.reasons.push_back("M''(0) is unbounded (an exponent lies in (1, 2))");
  } else if (m2 != 0.0) {
    result.reasons.push_back("M''(0) = " + format_double(m2));
  }
  result.eligible = fn.theorem2_eligible();
  if (result.eligible) result.reasons.push_back("every exponent exceeds 2, so M'(0) = M''(0) = 0");
  return result;
}

std::string format_report(const CriterionReport& r) {
  std::string out;
  out += report_line("spec", r.spec);
  out += report_line("verdict", to_string(r.verdict));
  out += report_line("reason", r.reason);
  if (r.verdict != Verdict::NotApplicable) {
    out += report_line("cond_i_max_d1", r.cond_i_max_d1);
    out += report_line("cond_i_max_d2", r.cond_i_max_d2);
    out += report_line("cond_i_witness_theta", r.cond_i_witness_theta);
    out += report_line("K_hat", r.K_hat);
    out += report_line("K_hat_scan", r.K_hat_scan);
    out += report_line("K_hat_tail", r.K_hat_tail);
    out += report_line("K_hat_witness_x1", r.K_hat_witness_x1);
    out += report_line("K_hat_witness_theta", r.K_hat_witness_theta);
    std::string profile;
    for (const auto& p : r.decay_profile) {
      if (!profile.empty()) profile += "; ";
      profile += format_double(p.x1) + "," + format_double(p.sup_d2);
    }
    out += report_line("decay_profile", profile);
  }
  const auto& o = r.options;
  out += report_line("grids", "theta_count=" + std::to_string(o.theta_count) + "; x1_scan=logspace(" +
                                  format_double(o.x1_min) + ", " + format_double(o.x1_max) + ", " +
                                  std::to_string(o.x1_scan_count) + "); decay=2^-1..2^-" +
                                  std::to_string(r.decay_profile.size()) + " in chunks of " +
                                  std::to_string(o.decay_steps));
  out += report_line("tolerances", "tol_i=" + format_double(o.tol_i) + "; tol_iii=" + format_double(o.tol_iii) +
                                       "; k_bound=" + format_double(o.k_bound) +
                                       "; min_decay_steps=" + std::to_string(o.min_decay_steps));
  out += report_line("evidence", r.evidence);
  out += report_line("assumptions", r.assumptions);
  return out;
}

std::string decay_profile_csv(const CriterionReport& r) {
  std::string out = "x1,sup_d2\n";
  for (const auto& p : r.decay_profile) out += format_double(p.x1) + "," + format_double(p.sup_d2) + "\n";
  return out;
}

}  // namespace levylab
