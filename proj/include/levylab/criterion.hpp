#pragma once

#include <string>
#include <vector>

#include "levylab/norm.hpp"

namespace levylab {

enum class Verdict { Applies, FailsConditionI, FailsConditionII, FailsConditionIII, NotApplicable };

std::string to_string(Verdict v);

struct CriterionOptions {
  int theta_count = 720;
  double x1_max = 64.0;
  double tol_i = 1e-8;
  double tol_iii = 1e-3;
  // log-spaced x_1 samples on [x1_min, x1_max] for the condition (ii) scan
  int x1_scan_count = 200;
  double x1_min = 1e-6;
  // decay profile uses x_1 = 2^-1, 2^-2, ... in chunks of decay_steps,
  // extended while sup d2 exceeds tol_iii, up to max_decay_steps
  int decay_steps = 30;
  int max_decay_steps = 990;
  int min_decay_steps = 10;
  // K_hat above this bound (or non-finite) fails condition (ii)
  double k_bound = 1e8;
};

struct DecayPoint {
  double x1;
  double sup_d2;
};

struct CriterionReport {
  std::string spec;
  double cond_i_max_d1 = 0.0;
  double cond_i_max_d2 = 0.0;
  double cond_i_witness_theta = 0.0;
  double K_hat = 0.0;
  double K_hat_scan = 0.0;
  double K_hat_tail = 0.0;
  double K_hat_witness_x1 = 0.0;
  double K_hat_witness_theta = 0.0;
  std::vector<DecayPoint> decay_profile;
  Verdict verdict = Verdict::NotApplicable;
  std::string reason;
  CriterionOptions options;
  std::string evidence = "numerical evidence on finite grids";
  std::string assumptions =
      "continuity of the second derivative in x_1 is sampled on grids, not certified";
};

// Empty when spec is three-dimensional and C^2 in x_1 off the plane x_1 = 0
// (l_q with 2 <= q < inf, Orlicz with every exponent >= 2, Euclidean);
// otherwise the reason the second-derivative test does not apply.
std::string smoothness_issue(const NormSpec& spec);

// Conditions (i)-(iii) of the second-derivative test on the unit circle of
// span(e_2, e_3). Never throws for unsupported norms: the report carries
// NotApplicable with a reason instead.
CriterionReport check_theorem1(const NormSpec& spec, const CriterionOptions& options = {});

struct Theorem2Result {
  bool eligible = false;
  std::vector<std::string> reasons;
  std::string label = "proved for power families";
};

// Analytic path: M'(0) = M''(0) = 0 for power combinations iff every exponent exceeds 2.
Theorem2Result check_theorem2(const OrliczFunction& fn);

// Structured text form with the CriterionReport field names as keys.
std::string format_report(const CriterionReport& report);
// x1,sup_d2 rows, 17 significant digits.
std::string decay_profile_csv(const CriterionReport& report);

}  // namespace levylab
