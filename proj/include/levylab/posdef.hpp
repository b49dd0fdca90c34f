#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "levylab/norm.hpp"

namespace levylab {

struct KernelMatrix {
  Eigen::MatrixXd G;  // G(i, j) = exp(-||x_i - x_j||^p)
  bool has_duplicates = false;
};

KernelMatrix kernel_matrix(const NormSpec& spec, double p, std::span<const VectorN> points);

// Smallest eigenvalue of a symmetric matrix. Throws std::invalid_argument when
// |G - G^T| exceeds 1e-12 * max(1, max|G|).
double min_eigenvalue(const Eigen::MatrixXd& G);

struct PsdWitness {
  std::string spec;
  std::vector<VectorN> points;
  double p = 0.0;
  double min_eigenvalue = 0.0;
  std::uint64_t seed = 0;
  int best_trial = -1;
  double scale = 0.0;         // point-cloud scale of the winning trial
  double threshold = 0.0;     // -1e-8 * trace(G) / size
  int refinement_accepted = 0;
  bool found = false;         // min_eigenvalue < threshold
};

struct WitnessOptions {
  int refinement_steps = 200;
  double refinement_step = 0.1;  // relative to the winning scale
};

// Random Gaussian point sets at scales {0.25, 0.5, 1, 2, 4} (trial t uses
// scale t mod 5), then coordinate descent on the best set.
PsdWitness witness_search(const NormSpec& spec, double p, int n_points, int trials, std::uint64_t seed,
                          const WitnessOptions& options = {});

// Header lines (# key=value) followed by one CSV row per point.
std::string witness_csv(const PsdWitness& witness);

}  // namespace levylab
