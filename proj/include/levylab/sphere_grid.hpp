#pragma once

#include <cstdint>
#include <vector>

#include "levylab/norm.hpp"

namespace levylab {

// Flips v so that its last nonzero coordinate is positive; v and -v map to the same point.
VectorN canonical_direction(const VectorN& v);

// Golden-angle spiral with count points on the hemisphere z > 0.
std::vector<VectorN> fibonacci_hemisphere(int count);

// Golden-angle spiral over the whole sphere, poles on the e_3 axis.
std::vector<VectorN> fibonacci_sphere(int count);

// Angles k*pi/count, k = 0..count-1.
std::vector<VectorN> half_circle_directions(int count);

// Direction set for the discretized moment problem:
//   n = 2: half_circle_directions(count)
//   n = 3: e_1, e_2, e_3 followed by fibonacci_hemisphere(count)
//   n > 3: e_1..e_n followed by count seeded Gaussian directions
std::vector<VectorN> direction_grid(int dim, int count, std::uint64_t seed);

// Gaussian vectors scaled onto the unit sphere of spec. The first k points
// do not depend on count, so smaller sample sets are prefixes of larger ones.
std::vector<VectorN> sample_unit_sphere(const NormSpec& spec, int count, std::uint64_t seed);

// Standard Gaussian points in R^dim.
std::vector<VectorN> gaussian_points(int dim, int count, std::uint64_t seed);

}  // namespace levylab
