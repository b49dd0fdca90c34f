#include <doctest.h>

#include <cmath>
#include <vector>

#include "levylab/calculus.hpp"
#include "levylab/criterion.hpp"
#include "levylab/rng.hpp"

using namespace levylab;

namespace {

// x_1 uniform in [-3, 3], (x_2, x_3) Gaussian with |(x_2, x_3)| >= 0.1.
VectorN random_point(Rng& rng) {
  for (;;) {
    const double x2 = rng.normal();
    const double x3 = rng.normal();
    if (std::hypot(x2, x3) >= 0.1) return make_vector({6.0 * rng.uniform() - 3.0, x2, x3});
  }
}

std::vector<NormSpec> smooth_specs() {
  return {NormSpec::lq(2.0, 3), NormSpec::lq(3.0, 3), NormSpec::lq(4.0, 3), NormSpec::lq(6.0, 3),
          NormSpec::euclidean(3),
          NormSpec::orlicz(OrliczFunction::normalized({{1.0, 3.0}, {1.0, 5.0}}), 3),
          NormSpec::orlicz(OrliczFunction::normalized({{0.9, 3.0}, {0.1, 2.5}}), 3)};
}

double relative(double value, double reference, double floor) {
  return std::abs(value - reference) / std::max(std::abs(reference), floor);
}

}  // namespace

TEST_CASE("power function reduces to a closed form") {
  const auto quartic = OrliczFunction::normalized({{1.0, 4.0}});
  const VectorN x = make_vector({1, 1, 1});
  CHECK(std::abs(orlicz_d1(quartic, x) - std::pow(3.0, -0.75)) <= 1e-14);
  // d2 for l_4 by hand: 3 x1^2 (|x|^4 - x1^4) / |x|^7 with |x| = 3^(1/4)
  const double norm = std::pow(3.0, 0.25);
  CHECK(std::abs(orlicz_d2(quartic, x) - 3.0 * 2.0 / std::pow(norm, 7)) <= 1e-14);

  const auto l3 = OrliczFunction::normalized({{1.0, 3.0}});
  const VectorN y = make_vector({0.5, -1.0, 2.0});
  const double n3 = std::cbrt(0.125 + 1.0 + 8.0);
  CHECK(std::abs(orlicz_d1(l3, y) - std::pow(0.5 / n3, 2.0)) <= 1e-14);
}

TEST_CASE("vanishing derivatives on the plane for exponents above two") {
  const auto quartic = OrliczFunction::normalized({{1.0, 4.0}});
  const auto mixed = OrliczFunction::normalized({{1.0, 3.0}, {1.0, 5.0}});
  for (double x2 : {0.3, 1.0, -2.0}) {
    for (double x3 : {0.0, 0.7, -5.0}) {
      const VectorN x = make_vector({0.0, x2, x3});
      CHECK(orlicz_d1(quartic, x) == 0.0);
      CHECK(orlicz_d2(quartic, x) == 0.0);
      CHECK(orlicz_d1(mixed, x) == 0.0);
      CHECK(orlicz_d2(mixed, x) == 0.0);
    }
  }
}

TEST_CASE("euclidean second derivative on the plane") {
  const auto square = OrliczFunction::normalized({{1.0, 2.0}});
  for (auto [x2, x3] : std::vector<std::pair<double, double>>{{1, 0}, {0.6, 0.8}, {3, 4}, {-0.2, 0.1}}) {
    const double expected = 1.0 / std::hypot(x2, x3);
    CHECK(orlicz_d2(square, make_vector({0.0, x2, x3})) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(norm_derivatives(NormSpec::euclidean(3), make_vector({0.0, x2, x3})).d2 ==
          doctest::Approx(expected).epsilon(1e-14));
  }
}

TEST_CASE("d1 stays in [0, 1] for nonnegative x_1") {
  Rng rng(17);
  for (const auto& spec : smooth_specs()) {
    for (int i = 0; i < 200; ++i) {
      VectorN x = random_point(rng);
      x[0] = std::abs(x[0]);
      const auto d = norm_derivatives(spec, x);
      CHECK(d.d1 >= 0.0);
      CHECK(d.d1 <= 1.0 + 1e-9);
      CHECK(d.d2 >= -1e-9);
    }
  }
}

TEST_CASE("finite differences on fixed points") {
  const VectorN x = make_vector({3, 4, 0});
  CHECK(std::abs(fd_d1(NormSpec::euclidean(3), make_vector({3, 4, 0.5})) - 3.0 / std::sqrt(25.25)) <= 1e-8);
  // (3, 4, 0) lies on the plane x_3 = 0 but (x_2, x_3) != 0, so the default step applies.
  CHECK(std::abs(fd_d1(NormSpec::lq(2.0, 3), x) - 0.6) <= 1e-8);

  const auto l4 = NormSpec::lq(4.0, 3);
  const VectorN ones = make_vector({1, 1, 1});
  const auto analytic = norm_derivatives(l4, ones);
  CHECK(relative(fd_d1(l4, ones), analytic.d1, 0.0) <= 1e-6);
  CHECK(relative(fd_d2(l4, ones), analytic.d2, 0.0) <= 1e-4);
}

TEST_CASE("odd d1 and even d2 in x_1") {
  Rng rng(23);
  for (const auto& spec : smooth_specs()) {
    for (int i = 0; i < 100; ++i) {
      const VectorN x = random_point(rng);
      VectorN mirrored = x;
      mirrored[0] = -x[0];
      const auto a = norm_derivatives(spec, x);
      const auto b = norm_derivatives(spec, mirrored);
      CHECK(a.d1 == -b.d1);
      CHECK(a.d2 == b.d2);
    }
  }
}

TEST_CASE("analytic derivatives against finite differences") {
  // d2 is compared on its natural scale 1/|x| where the reference is near zero
  Rng rng(37);
  for (const auto& spec : smooth_specs()) {
    for (int i = 0; i < 500; ++i) {
      const VectorN x = random_point(rng);
      const auto d = norm_derivatives(spec, x);
      CHECK(relative(fd_d1(spec, x), d.d1, 1.0) <= 1e-5);
      CHECK(relative(fd_d2(spec, x), d.d2, 1.0 / eval_norm(spec, x)) <= 1e-3);
    }
  }
}

TEST_CASE("degree -1 homogeneity of d2") {
  Rng rng(29);
  for (const auto& spec : smooth_specs()) {
    for (int i = 0; i < 100; ++i) {
      const VectorN x = random_point(rng);
      const double d2 = norm_derivatives(spec, x).d2;
      const double scaled = norm_derivatives(spec, VectorN(2.0 * x)).d2;
      CHECK(std::abs(scaled - 0.5 * d2) <= 1e-9 * std::max(1.0, std::abs(d2)));
    }
  }
}

TEST_CASE("bound by the criterion constant over the section norm") {
  Rng rng(31);
  for (const auto& fn : {OrliczFunction::normalized({{1.0, 3.0}, {1.0, 5.0}}),
                         OrliczFunction::normalized({{1.0, 4.0}}),
                         OrliczFunction::normalized({{0.9, 3.0}, {0.1, 2.5}})}) {
    const auto spec = NormSpec::orlicz(fn, 3);
    const double k_hat = check_theorem1(spec).K_hat;
    for (int i = 0; i < 500; ++i) {
      const VectorN x = random_point(rng);
      const double section = eval_norm(spec, make_vector({0.0, x[1], x[2]}));
      // sampled grids: allow 1% above the estimate
      CHECK(norm_derivatives(spec, x).d2 <= 1.01 * k_hat / section);
    }
  }
}

TEST_CASE("preconditions") {
  const auto quartic = OrliczFunction::normalized({{1.0, 4.0}});
  CHECK_THROWS_AS(orlicz_d1(quartic, make_vector({1.0, 0.0, 0.0})), std::invalid_argument);
  CHECK_THROWS_AS(norm_derivatives(NormSpec::lq(std::numeric_limits<double>::infinity(), 3), make_vector({1, 1, 1})),
                  std::domain_error);
  CHECK_THROWS_AS(fd_d1(NormSpec::lq(4.0, 3), make_vector({1, 1, 1}), 0.0), std::invalid_argument);
}
