#include "levylab/sphere_grid.hpp"

#include <cmath>
#include <numbers>

#include "levylab/rng.hpp"

namespace levylab {

namespace {

const double kGoldenAngle = std::numbers::pi * (3.0 - std::sqrt(5.0));

void check_count(int count) {
  if (count < 1) throw std::invalid_argument("point count must be positive");
}

}  // namespace

VectorN canonical_direction(const VectorN& v) {
  for (Eigen::Index k = v.size() - 1; k >= 0; --k) {
    if (v[k] > 0.0) return v;
    if (v[k] < 0.0) return -v;
  }
  return v;
}

std::vector<VectorN> fibonacci_hemisphere(int count) {
  check_count(count);
  std::vector<VectorN> points;
  points.reserve(count);
  for (int k = 0; k < count; ++k) {
    const double z = 1.0 - (k + 0.5) / count;
    const double r = std::sqrt(1.0 - z * z);
    const double phi = kGoldenAngle * k;
    points.push_back(make_vector({r * std::cos(phi), r * std::sin(phi), z}));
  }
  return points;
}

std::vector<VectorN> fibonacci_sphere(int count) {
  check_count(count);
  std::vector<VectorN> points;
  points.reserve(count);
  for (int k = 0; k < count; ++k) {
    const double z = 1.0 - (2.0 * k + 1.0) / count;
    const double r = std::sqrt(1.0 - z * z);
    const double phi = kGoldenAngle * k;
    points.push_back(make_vector({r * std::cos(phi), r * std::sin(phi), z}));
  }
  return points;
}

std::vector<VectorN> half_circle_directions(int count) {
  check_count(count);
  std::vector<VectorN> points;
  points.reserve(count);
  for (int k = 0; k < count; ++k) {
    const double theta = std::numbers::pi * k / count;
    points.push_back(make_vector({std::cos(theta), std::sin(theta)}));
  }
  return points;
}

std::vector<VectorN> direction_grid(int dim, int count, std::uint64_t seed) {
  if (dim < kMinDim || dim > kMaxDim) throw std::invalid_argument("dimension must be between 2 and 8");
  if (dim == 2) return half_circle_directions(count);

  std::vector<VectorN> directions;
  directions.reserve(static_cast<std::size_t>(dim + count));
  for (int k = 0; k < dim; ++k) directions.push_back(basis_vector(dim, k));
  if (dim == 3) {
    const auto grid = fibonacci_hemisphere(count);
    directions.insert(directions.end(), grid.begin(), grid.end());
    return directions;
  }
  for (const auto& g : gaussian_points(dim, count, seed)) directions.push_back(canonical_direction(g / g.norm()));
  return directions;
}

std::vector<VectorN> gaussian_points(int dim, int count, std::uint64_t seed) {
  check_count(count);
  Rng rng(seed);
  std::vector<VectorN> points;
  points.reserve(count);
  for (int i = 0; i < count; ++i) {
    VectorN g(dim);
    for (int k = 0; k < dim; ++k) g[k] = rng.normal();
    points.push_back(g);
  }
  return points;
}

std::vector<VectorN> sample_unit_sphere(const NormSpec& spec, int count, std::uint64_t seed) {
  auto points = gaussian_points(spec.dim(), count, seed);
  for (auto& x : points) {
    double len = eval_norm(spec, x);
    while (len == 0.0) {
      // measure-zero event; nudge deterministically
      x[0] += 1.0;
      len = eval_norm(spec, x);
    }
    x /= len;
  }
  return points;
}

}  // namespace levylab
