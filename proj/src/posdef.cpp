#include "levylab/posdef.hpp"

#include <array>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "levylab/parallel.hpp"
#include "levylab/report.hpp"
#include "levylab/rng.hpp"
#include "levylab/spec_text.hpp"

namespace levylab {

namespace {

constexpr std::array<double, 5> kScales = {0.25, 0.5, 1.0, 2.0, 4.0};
constexpr std::uint64_t kRefineStream = 0xffffffffULL;

void check_exponent(double p) {
  if (!(p > 0.0 && p <= 2.0)) throw std::invalid_argument("p must lie in (0, 2]");
}

double kernel_min_eigenvalue(const NormSpec& spec, double p, const std::vector<VectorN>& points) {
  return min_eigenvalue(kernel_matrix(spec, p, points).G);
}

}  // namespace

KernelMatrix kernel_matrix(const NormSpec& spec, double p, std::span<const VectorN> points) {
  check_exponent(p);
  const auto n = static_cast<Eigen::Index>(points.size());
  KernelMatrix k{Eigen::MatrixXd::Identity(n, n), false};
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double dist = eval_norm(spec, points[i] - points[j]);
      if (dist == 0.0) k.has_duplicates = true;
      const double g = std::exp(-std::pow(dist, p));
      k.G(i, j) = g;
      k.G(j, i) = g;
    }
  }
  return k;
}

double min_eigenvalue(const Eigen::MatrixXd& G) {
  if (G.rows() != G.cols() || G.rows() == 0) throw std::invalid_argument("min_eigenvalue needs a nonempty square matrix");
  const double scale = std::max(1.0, G.cwiseAbs().maxCoeff());
  if ((G - G.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw std::invalid_argument("min_eigenvalue needs a symmetric matrix");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(G, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("symmetric eigensolver did not converge");
  return solver.eigenvalues().minCoeff();
}

PsdWitness witness_search(const NormSpec& spec, double p, int n_points, int trials, std::uint64_t seed,
                          const WitnessOptions& options) {
  check_exponent(p);
  if (n_points < 3) throw std::invalid_argument("witness_search needs at least 3 points");
  if (trials < 1) throw std::invalid_argument("witness_search needs at least one trial");

  const int dim = spec.dim();
  auto trial_points = [&](int t) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(t));
    const double scale = kScales[static_cast<std::size_t>(t) % kScales.size()];
    std::vector<VectorN> points(static_cast<std::size_t>(n_points), VectorN(dim));
    for (auto& x : points) {
      for (int k = 0; k < dim; ++k) x[k] = scale * rng.normal();
    }
    return points;
  };

  std::vector<double> eigen(static_cast<std::size_t>(trials));
  parallel_for(eigen.size(), [&](std::size_t t) {
    eigen[t] = kernel_min_eigenvalue(spec, p, trial_points(static_cast<int>(t)));
  });

  // lowest eigenvalue, ties broken by the smaller trial index
  int best = 0;
  for (int t = 1; t < trials; ++t) {
    if (eigen[t] < eigen[best]) best = t;
  }

  PsdWitness w;
  w.spec = serialize_spec(spec);
  w.p = p;
  w.seed = seed;
  w.best_trial = best;
  w.scale = kScales[static_cast<std::size_t>(best) % kScales.size()];
  w.points = trial_points(best);
  w.min_eigenvalue = eigen[best];

  // Coordinate descent: move one point at a time, keep improvements.
  Rng rng = Rng::stream(seed, kRefineStream);
  const double step = options.refinement_step * w.scale;
  for (int s = 0; s < options.refinement_steps; ++s) {
    const auto i = static_cast<std::size_t>(s % n_points);
    std::vector<VectorN> candidate = w.points;
    for (int k = 0; k < dim; ++k) candidate[i][k] += step * rng.normal();
    const double value = kernel_min_eigenvalue(spec, p, candidate);
    if (value < w.min_eigenvalue) {
      w.min_eigenvalue = value;
      w.points = std::move(candidate);
      ++w.refinement_accepted;
    }
  }

  const auto g = kernel_matrix(spec, p, w.points).G;
  w.threshold = -1e-8 * g.trace() / static_cast<double>(g.rows());
  w.found = w.min_eigenvalue < w.threshold;
  return w;
}

std::string witness_csv(const PsdWitness& w) {
  std::string out;
  out += "# spec=" + w.spec + "\n";
  out += "# p=" + format_double(w.p) + "\n";
  out += "# min_eigenvalue=" + format_double(w.min_eigenvalue) + "\n";
  out += "# seed=" + std::to_string(w.seed) + "\n";
  out += "# best_trial=" + std::to_string(w.best_trial) + "\n";
  out += "# threshold=" + format_double(w.threshold) + "\n";
  out += std::string("# found=") + (w.found ? "true" : "false") + "\n";
  const int dim = w.points.empty() ? 0 : static_cast<int>(w.points.front().size());
  for (int k = 0; k < dim; ++k) out += (k ? ",x" : "x") + std::to_string(k + 1);
  out += "\n";
  for (const auto& x : w.points) {
    for (int k = 0; k < dim; ++k) out += (k ? "," : "") + format_double(x[k]);
    out += "\n";
  }
  return out;
}

}  // namespace levylab
