#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "levylab/norm.hpp"

namespace levylab {

struct Atom {
  VectorN direction;  // Euclidean unit vector, canonical hemisphere
  double weight;
};

// Discrete nonnegative measure on the Euclidean unit sphere. Directions are
// folded into a fixed hemisphere since |(x, xi)|^p is even in xi.
class SphericalMeasure {
 public:
  SphericalMeasure() = default;
  // Throws std::invalid_argument on negative weights, non-unit directions
  // (tolerance 1e-12) or mixed dimensions.
  explicit SphericalMeasure(std::vector<Atom> atoms);

  std::span<const Atom> atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }
  std::size_t size() const { return atoms_.size(); }
  double total_mass() const;

  // sum_j w_j |(x, xi_j)|^p
  double integrate_power(const VectorN& x, double p) const;

 private:
  std::vector<Atom> atoms_;
};

struct MomentSystem {
  Eigen::MatrixXd A;  // A(i, j) = |(x_i, xi_j)|^p
  Eigen::VectorXd b;  // b(i) = ||x_i||^p
};

MomentSystem assemble_moment_system(const NormSpec& spec, double p, std::span<const VectorN> samples,
                                    std::span<const VectorN> directions);

struct RefinementLevel {
  int directions;
  int samples;
};

// Defaults per dimension: n = 2 reaches 256 directions / 512 samples,
// n >= 3 reaches 1024 directions / 2048 samples.
std::vector<RefinementLevel> default_levels(int dim);

// Parses "16x512,64x512,..." (directions x samples).
std::vector<RefinementLevel> parse_levels(const std::string& text);

struct LevelResult {
  int directions = 0;
  int samples = 0;
  int columns = 0;  // directions actually used, including coordinate axes
  double relative_residual = 0.0;
  int iterations = 0;
  bool converged = true;
};

enum class Interpretation { FeasibleEvidence, InfeasibleEvidence, Inconclusive };

std::string to_string(Interpretation i);

struct FeasibilityThresholds {
  double feasible_residual = 1e-3;
  double infeasible_residual = 1e-2;
  // relative change allowed when directions are quadrupled at fixed samples
  double plateau_change = 0.10;
  // slack for "nonincreasing" once residuals reach roundoff
  double monotone_slack = 1e-12;
};

struct FeasibilityResult {
  std::string spec;
  double p = 0.0;
  std::uint64_t seed = 0;
  std::vector<LevelResult> levels;
  SphericalMeasure best_measure;
  Interpretation interpretation = Interpretation::Inconclusive;
  std::string reason;
  double plateau_change = -1.0;  // from the last quadrupling pair, -1 when there is none
  FeasibilityThresholds thresholds;
};

// Discretizes the Levy representation at each refinement level and solves
// the nonnegative least-squares problem; samples lie on the unit sphere of
// spec, so b = 1.
FeasibilityResult feasibility_scan(const NormSpec& spec, double p, std::vector<RefinementLevel> levels,
                                   std::uint64_t seed, const FeasibilityThresholds& thresholds = {});

// max_x |sum_j w_j |(x, xi_j)|^p - ||x||^p| / ||x||^p
double verify_measure(const NormSpec& spec, double p, const SphericalMeasure& mu, std::span<const VectorN> test_points);

// Equal weights on a Fibonacci hemisphere grid of R^3, scaled so that the
// representation is exact at x = e_1. Approximates the rotation-invariant
// measure representing the Euclidean norm.
SphericalMeasure calibrated_uniform_measure(double p, int count);

std::string feasibility_csv(const FeasibilityResult& result);
std::string measure_csv(const SphericalMeasure& mu);
std::string format_feasibility(const FeasibilityResult& result);

}  // namespace levylab
