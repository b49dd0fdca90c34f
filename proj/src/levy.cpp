#include "levylab/levy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "levylab/nnls.hpp"
#include "levylab/parallel.hpp"
#include "levylab/report.hpp"
#include "levylab/sphere_grid.hpp"
#include "levylab/spec_text.hpp"

namespace levylab {

namespace {

constexpr std::uint64_t kDirectionSeedSalt = 0xd1b54a32d192ed03ULL;

void check_exponent(double p) {
  if (!(p > 0.0 && p <= 2.0)) throw std::invalid_argument("p must lie in (0, 2]");
}

}  // namespace

SphericalMeasure::SphericalMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  for (auto& atom : atoms_) {
    if (atom.direction.size() != atoms_.front().direction.size()) {
      throw std::invalid_argument("measure atoms have mixed dimensions");
    }
    if (!std::isfinite(atom.weight) || atom.weight < 0.0) {
      throw std::invalid_argument("measure weights must be finite and nonnegative");
    }
    if (!atom.direction.allFinite() || std::abs(atom.direction.norm() - 1.0) > 1e-12) {
      throw std::invalid_argument("measure directions must have unit Euclidean length");
    }
    atom.direction = canonical_direction(atom.direction);
  }
}

double SphericalMeasure::total_mass() const {
  double sum = 0.0;
  for (const auto& a : atoms_) sum += a.weight;
  return sum;
}

double SphericalMeasure::integrate_power(const VectorN& x, double p) const {
  double sum = 0.0;
  for (const auto& a : atoms_) sum += a.weight * std::pow(std::abs(x.dot(a.direction)), p);
  return sum;
}

MomentSystem assemble_moment_system(const NormSpec& spec, double p, std::span<const VectorN> samples,
                                    std::span<const VectorN> directions) {
  check_exponent(p);
  const auto rows = static_cast<Eigen::Index>(samples.size());
  const auto cols = static_cast<Eigen::Index>(directions.size());
  for (const auto& xi : directions) {
    if (xi.size() != spec.dim()) throw std::invalid_argument("direction dimension does not match the norm");
  }
  MomentSystem system{Eigen::MatrixXd(rows, cols), Eigen::VectorXd(rows)};
  parallel_for(samples.size(), [&](std::size_t i) {
    const VectorN& x = samples[i];
    const double len = eval_norm(spec, x);
    if (len == 0.0) throw std::invalid_argument("moment samples must be nonzero");
    const auto r = static_cast<Eigen::Index>(i);
    system.b[r] = std::pow(len, p);
    for (Eigen::Index j = 0; j < cols; ++j) system.A(r, j) = std::pow(std::abs(x.dot(directions[j])), p);
  });
  return system;
}

std::vector<RefinementLevel> default_levels(int dim) {
  if (dim == 2) return {{16, 128}, {64, 512}, {256, 512}};
  return {{16, 512}, {64, 512}, {256, 2048}, {1024, 2048}};
}

std::vector<RefinementLevel> parse_levels(const std::string& text) {
  std::vector<RefinementLevel> levels;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto x = item.find('x');
    try {
      if (x == std::string::npos) throw std::invalid_argument("missing 'x'");
      std::size_t used_d = 0;
      std::size_t used_s = 0;
      const int d = std::stoi(item.substr(0, x), &used_d);
      const int s = std::stoi(item.substr(x + 1), &used_s);
      if (used_d != x || used_s != item.size() - x - 1 || d < 1 || s < 1) throw std::invalid_argument("bad counts");
      levels.push_back({d, s});
    } catch (const std::exception&) {
      throw std::invalid_argument("level '" + item + "' is not of the form <directions>x<samples>");
    }
  }
  if (levels.empty()) throw std::invalid_argument("no refinement levels given");
  return levels;
}

std::string to_string(Interpretation i) {
  switch (i) {
    case Interpretation::FeasibleEvidence:
      return "FeasibleEvidence";
    case Interpretation::InfeasibleEvidence:
      return "InfeasibleEvidence";
    case Interpretation::Inconclusive:
      return "Inconclusive";
  }
  return "unknown";
}

FeasibilityResult feasibility_scan(const NormSpec& spec, double p, std::vector<RefinementLevel> levels,
                                   std::uint64_t seed, const FeasibilityThresholds& thresholds) {
  check_exponent(p);
  if (levels.empty()) throw std::invalid_argument("feasibility_scan needs at least one refinement level");
  std::stable_sort(levels.begin(), levels.end(),
                   [](const RefinementLevel& a, const RefinementLevel& b) { return a.directions < b.directions; });

  FeasibilityResult result;
  result.spec = serialize_spec(spec);
  result.p = p;
  result.seed = seed;
  result.thresholds = thresholds;

  int max_samples = 0;
  for (const auto& level : levels) max_samples = std::max(max_samples, level.samples);
  const auto all_samples = sample_unit_sphere(spec, max_samples, seed);

  for (const auto& level : levels) {
    const auto directions = direction_grid(spec.dim(), level.directions, seed ^ kDirectionSeedSalt);
    const auto system = assemble_moment_system(
        spec, p, std::span<const VectorN>(all_samples.data(), static_cast<std::size_t>(level.samples)), directions);
    const auto solution = solve_nnls(system.A, system.b);

    LevelResult row;
    row.directions = level.directions;
    row.samples = level.samples;
    row.columns = static_cast<int>(directions.size());
    row.relative_residual = solution.relative_residual;
    row.iterations = solution.iterations;
    row.converged = solution.converged;
    result.levels.push_back(row);

    if (&level == &levels.back()) {
      std::vector<Atom> atoms;
      for (std::size_t j = 0; j < directions.size(); ++j) {
        const double w = solution.weights[static_cast<Eigen::Index>(j)];
        if (w > 0.0) atoms.push_back({directions[j], w});
      }
      result.best_measure = SphericalMeasure(std::move(atoms));
    }
  }

  const auto& rows = result.levels;
  std::ostringstream why;
  const auto stalled = std::find_if(rows.begin(), rows.end(), [](const LevelResult& r) { return !r.converged; });
  if (stalled != rows.end()) {
    result.interpretation = Interpretation::Inconclusive;
    why << "NNLS iteration cap exceeded at " << stalled->directions << " directions / " << stalled->samples
        << " samples";
    result.reason = why.str();
    return result;
  }

  bool nonincreasing = true;
  bool all_high = true;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (k > 0) {
      nonincreasing = nonincreasing &&
                      rows[k].relative_residual <= rows[k - 1].relative_residual + thresholds.monotone_slack;
    }
    all_high = all_high && rows[k].relative_residual > thresholds.infeasible_residual;
  }
  for (std::size_t j = rows.size(); j-- > 0;) {
    for (std::size_t i = 0; i < j; ++i) {
      if (rows[j].directions == 4 * rows[i].directions && rows[j].samples == rows[i].samples) {
        result.plateau_change = std::abs(rows[j].relative_residual - rows[i].relative_residual) /
                                rows[i].relative_residual;
      }
    }
    if (result.plateau_change >= 0.0) break;
  }

  const double final_residual = rows.back().relative_residual;
  if (final_residual < thresholds.feasible_residual && nonincreasing) {
    result.interpretation = Interpretation::FeasibleEvidence;
    why << "final residual " << format_double(final_residual) << " < " << format_double(thresholds.feasible_residual)
        << " and residuals do not increase under refinement";
  } else if (all_high && result.plateau_change >= 0.0 && result.plateau_change < thresholds.plateau_change) {
    result.interpretation = Interpretation::InfeasibleEvidence;
    why << "residual exceeds " << format_double(thresholds.infeasible_residual)
        << " at every level and plateaus at " << format_double(final_residual) << " (relative change "
        << format_double(result.plateau_change) << " under 4x directions)";
  } else {
    result.interpretation = Interpretation::Inconclusive;
    why << "final residual " << format_double(final_residual) << " meets neither rule";
    if (result.plateau_change < 0.0) why << " (no level pair quadruples directions at fixed samples)";
  }
  result.reason = why.str();
  return result;
}

double verify_measure(const NormSpec& spec, double p, const SphericalMeasure& mu,
                      std::span<const VectorN> test_points) {
  check_exponent(p);
  double worst = 0.0;
  for (const auto& x : test_points) {
    const double target = std::pow(eval_norm(spec, x), p);
    if (target == 0.0) throw std::invalid_argument("verify_measure needs nonzero test points");
    worst = std::max(worst, std::abs(mu.integrate_power(x, p) - target) / target);
  }
  return worst;
}

SphericalMeasure calibrated_uniform_measure(double p, int count) {
  check_exponent(p);
  const auto grid = fibonacci_hemisphere(count);
  double at_e1 = 0.0;
  for (const auto& xi : grid) at_e1 += std::pow(std::abs(xi[0]), p);
  const double weight = 1.0 / at_e1;
  std::vector<Atom> atoms;
  atoms.reserve(grid.size());
  for (const auto& xi : grid) atoms.push_back({xi / xi.norm(), weight});
  return SphericalMeasure(std::move(atoms));
}

std::string feasibility_csv(const FeasibilityResult& result) {
  std::string out = "level,directions,samples,residual\n";
  for (std::size_t k = 0; k < result.levels.size(); ++k) {
    const auto& r = result.levels[k];
    out += std::to_string(k) + "," + std::to_string(r.directions) + "," + std::to_string(r.samples) + "," +
           format_double(r.relative_residual) + "\n";
  }
  return out;
}

std::string measure_csv(const SphericalMeasure& mu) {
  const int dim = mu.empty() ? 3 : static_cast<int>(mu.atoms().front().direction.size());
  static const char* named[] = {"xi_x", "xi_y", "xi_z"};
  std::string out;
  for (int k = 0; k < dim; ++k) out += dim <= 3 ? std::string(named[k]) + "," : "xi_" + std::to_string(k + 1) + ",";
  out += "w\n";
  for (const auto& atom : mu.atoms()) {
    for (int k = 0; k < dim; ++k) out += format_double(atom.direction[k]) + ",";
    out += format_double(atom.weight) + "\n";
  }
  return out;
}

std::string format_feasibility(const FeasibilityResult& r) {
  std::string out;
  out += report_line("spec", r.spec);
  out += report_line("p", r.p);
  out += report_line("seed", std::to_string(r.seed));
  out += report_line("interpretation", to_string(r.interpretation));
  out += report_line("reason", r.reason);
  for (std::size_t k = 0; k < r.levels.size(); ++k) {
    const auto& l = r.levels[k];
    out += report_line("level[" + std::to_string(k) + "]",
                       "directions=" + std::to_string(l.directions) + " columns=" + std::to_string(l.columns) +
                           " samples=" + std::to_string(l.samples) + " residual=" + format_double(l.relative_residual) +
                           " iterations=" + std::to_string(l.iterations) +
                           (l.converged ? "" : " (iteration cap exceeded)"));
  }
  out += report_line("plateau_change", r.plateau_change);
  out += report_line("best_measure_atoms", std::to_string(r.best_measure.size()));
  out += report_line("best_measure_mass", r.best_measure.total_mass());
  out += report_line("thresholds", "feasible<" + format_double(r.thresholds.feasible_residual) + "; infeasible>" +
                                       format_double(r.thresholds.infeasible_residual) + "; plateau_change<" +
                                       format_double(r.thresholds.plateau_change));
  out += report_line("evidence", "numerical evidence only; a residual plateau is not a proof of non-embeddability");
  return out;
}

}  // namespace levylab
